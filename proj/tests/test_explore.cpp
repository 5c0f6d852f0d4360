#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "syncheck/builtins.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/io.hpp"
#include "syncheck/trace.hpp"
#include "test_util.hpp"

using namespace syncheck;
using namespace syncheck::explore;
using testutil::example22;
using testutil::letter;
using testutil::tokens;

namespace {

lang::Nfa word_language(const System& s, const std::string& names) {
    std::vector<int> word;
    std::string cur;
    for (char c : names + " ") {
        if (c == ' ') {
            if (!cur.empty()) word.push_back(letter(s, cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return lang::Nfa::word_prefixes(s.messages().size(), word);
}

}  // namespace

TEST_CASE("send languages of example22 at bounds 0..2") {
    const System& s = example22();
    for (int k : {0, 1}) {
        const auto obs = observables(build_lts(s, SemanticsKind::P2pFifo, k));
        CHECK(lang::language_equal(obs.send_language, word_language(s, "a a b c")));
    }
    const auto obs2 = observables(build_lts(s, SemanticsKind::P2pFifo, 2));
    CHECK(lang::language_equal(obs2.send_language, word_language(s, "a a b c d")));
}

TEST_CASE("rendezvous exploration stays within the control-state product") {
    for (const reduce::BuiltinSystem& entry : reduce::builtin_systems()) {
        const auto lts = build_lts(entry.system, SemanticsKind::P2pFifo, 0);
        size_t product = 1;
        for (const Peer& p : entry.system.peers()) product *= p.state_names.size();
        CHECK(lts.states.size() <= product);
        for (const Configuration& c : lts.states) CHECK(c.stable());
    }
}

TEST_CASE("maximal rendezvous trace of example22") {
    const System& s = example22();
    const auto lts = build_lts(s, SemanticsKind::P2pFifo, 0);
    const auto all = enumerate_traces(lts, 20);
    const Trace longest = *std::max_element(
        all.begin(), all.end(),
        [](const Trace& a, const Trace& b) { return a.size() < b.size(); });
    CHECK(longest == tokens(s, "!a ?a !a ?a !b ?b !c ?c"));
}

TEST_CASE("stable keys of the rendezvous observable match execution") {
    const System& s = example22();
    const auto obs = observables(build_lts(s, SemanticsKind::P2pFifo, 0));
    std::set<Configuration> expected;
    for (const char* text :
         {"", "!a ?a", "!a ?a !a ?a", "!a ?a !a ?a !b ?b", "!a ?a !a ?a !b ?b !c ?c"}) {
        const RunResult r = run(s, SemanticsKind::P2pFifo, tokens(s, text));
        REQUIRE(r.ok);
        expected.insert(r.configuration());
    }
    std::set<Configuration> got;
    for (const auto& [config, nfa] : obs.stable_map) got.insert(config);
    CHECK(got == expected);
    CHECK(got.size() == 5);
}

TEST_CASE("buffering does not add stable pairs on example22") {
    const System& s = example22();
    const auto obs0 = observables(build_lts(s, SemanticsKind::P2pFifo, 0));
    const auto obs2 = observables(build_lts(s, SemanticsKind::P2pFifo, 2));
    std::set<Configuration> keys0, keys2;
    for (const auto& [c, nfa] : obs0.stable_map) keys0.insert(c);
    for (const auto& [c, nfa] : obs2.stable_map) keys2.insert(c);
    CHECK(keys0 == keys2);
    CHECK(keys2.size() == 5);
}

TEST_CASE("observables of systems that cannot rendezvous") {
    const System& idle = reduce::builtin_system("p1a-idle").system;
    const auto obs = observables(build_lts(idle, SemanticsKind::P2pFifo, 0));
    CHECK(lang::language_equal(obs.send_language,
                               lang::Nfa::word_prefixes(idle.messages().size(), {})));

    // A system with no transitions at all: language {eps}, one stable entry {eps}.
    const System empty(MessageSet(2, {{"a", 0, 1}}), {Peer{{"q0"}, 0, {}}, Peer{{"q0"}, 0, {}}},
                       "empty");
    const auto obs2 = observables(build_lts(empty, SemanticsKind::P2pFifo, 0));
    CHECK(lang::language_equal(obs2.send_language,
                               lang::Nfa::word_prefixes(empty.messages().size(), {})));
    REQUIRE(obs2.stable_map.size() == 1);
    CHECK(obs2.stable_map.begin()->first ==
          initial_configuration(empty, SemanticsKind::P2pFifo));
    CHECK(lang::language_equal(obs2.stable_map.begin()->second,
                               lang::Nfa::word_prefixes(empty.messages().size(), {})));
}

TEST_CASE("send_lts relabels receives as silent") {
    const System& s = example22();
    const auto plain = build_lts(s, SemanticsKind::P2pFifo, 1);
    const auto silent = send_lts(s, SemanticsKind::P2pFifo, 1);
    CHECK(silent.send_view);
    size_t recv_edges = 0;
    for (const Edge& e : plain.edges) recv_edges += e.kind == EdgeKind::Recv;
    size_t silent_edges = 0;
    for (const Edge& e : silent.edges) silent_edges += e.kind == EdgeKind::Recv;
    CHECK(recv_edges == silent_edges);
    CHECK(plain.edges.size() == silent.edges.size());

    const auto rendezvous_view = send_lts(s, SemanticsKind::P2pFifo, 0);
    for (const Edge& e : rendezvous_view.edges) CHECK(e.kind == EdgeKind::Sync);
}

TEST_CASE("deadlock classification") {
    // The ordered variant of the two-letter encoding deadlocks at rendezvous:
    // peers 1 and 3 wait for acknowledgements while peer 2 sits in the sink.
    const reduce::FifoAutomaton& a = reduce::builtin_fifo("example33-A").automaton;
    const LetterId m = *a.find_letter("m");
    const System prime = reduce::fifo_to_system_prime(a, m);
    const auto lts = build_lts(prime, SemanticsKind::P2pFifo, 0);
    const DeadlockReport report = deadlocks(lts);
    REQUIRE_FALSE(report.deadlocked.empty());
    bool found_sink = false;
    for (int state : report.deadlocked) {
        const Configuration& c = lts.states[static_cast<size_t>(state)];
        found_sink |= prime.peer(1).state_names[static_cast<size_t>(c.control[1])] == "qbot";
    }
    CHECK(found_sink);

    const System& chain = reduce::builtin_system("intro-sync").system;
    const DeadlockReport chain_report = deadlocks(build_lts(chain, SemanticsKind::P2pFifo, 1));
    CHECK(chain_report.deadlocked.empty());
    CHECK_FALSE(chain_report.terminal.empty());

    const System& idle = reduce::builtin_system("p1a-idle").system;
    const DeadlockReport idle_report = deadlocks(build_lts(idle, SemanticsKind::P2pFifo, 1));
    CHECK(idle_report.deadlocked.empty());
    REQUIRE(idle_report.terminal_orphan.size() == 1);
}

TEST_CASE("drainability") {
    for (const char* name : {"ring-pingpong", "ring-loop", "genest-sync", "ring3-token"}) {
        const System& s = reduce::builtin_system(name).system;
        const DrainReport report = drainable_to_stable(build_lts(s, SemanticsKind::P2pFifo, 3));
        INFO(name);
        CHECK(report.all_drainable);
    }

    const System& idle = reduce::builtin_system("p1a-idle").system;
    const DrainReport report = drainable_to_stable(build_lts(idle, SemanticsKind::P2pFifo, 1));
    CHECK_FALSE(report.all_drainable);
    REQUIRE(report.stuck.size() == 1);
    CHECK(report.stuck[0].buffers == "1>2=a");

    // After the worked trace, peer 2 is parked in q5 and both leftover buffers
    // are beyond recovery.
    const System& s = example22();
    const auto lts = build_lts(s, SemanticsKind::P2pFifo, 2);
    const RunResult r = run(s, SemanticsKind::P2pFifo, testutil::example22_trace());
    const auto idx = lts.state_index(r.configuration());
    REQUIRE(idx.has_value());
    const DrainReport drains = drainable_to_stable(lts);
    bool stuck = false;
    for (const auto& entry : drains.stuck) stuck |= entry.state == *idx;
    CHECK(stuck);
}

TEST_CASE("send language and stable map grow monotonically with the bound") {
    for (const char* name : {"example22", "intro-unsync", "genest-sync"}) {
        const System& s = reduce::builtin_system(name).system;
        Observable prev;
        for (int k = 0; k <= 3; ++k) {
            const Observable cur = observables(build_lts(s, SemanticsKind::P2pFifo, k));
            if (k > 0) {
                CHECK(lang::language_subset(prev.send_language, cur.send_language));
                for (const auto& [config, nfa] : prev.stable_map) {
                    auto it = cur.stable_map.find(config);
                    REQUIRE(it != cur.stable_map.end());
                    CHECK(lang::language_subset(nfa, it->second));
                }
            }
            prev = cur;
        }
    }
}

TEST_CASE("every rendezvous trace is 1-bounded") {
    const System& s = example22();
    const auto lts0 = build_lts(s, SemanticsKind::P2pFifo, 0);
    const auto lts1 = build_lts(s, SemanticsKind::P2pFifo, 1);
    for (const Trace& t : enumerate_traces(lts0, 12)) {
        CHECK(traces::is_k_bounded(s.messages(), t, 1));
        CHECK(accepts_trace(lts1, t));
    }
}

TEST_CASE("paths are exactly the bounded executable traces") {
    std::mt19937_64 rng(20260810);
    for (const reduce::BuiltinSystem& entry : reduce::builtin_systems()) {
        const System& s = entry.system;
        const auto lts = build_lts(s, SemanticsKind::P2pFifo, 2);
        for (const Trace& t : enumerate_traces(lts, 7)) {
            CHECK(traces::is_fifo(s.messages(), t));
            CHECK(traces::is_k_bounded(s.messages(), t, 2));
        }
        for (int i = 0; i < 500; ++i) {
            Trace t = i % 2 == 0
                          ? testutil::random_trace(rng, s.messages(), 6)
                          : testutil::random_executable_trace(rng, s, SemanticsKind::P2pFifo, 6);
            const bool member =
                run(s, SemanticsKind::P2pFifo, t).ok && traces::is_k_bounded(s.messages(), t, 2);
            CHECK(accepts_trace(lts, t) == member);
        }
    }
}

TEST_CASE("exploration is deterministic and respects the ceiling") {
    const System& s = example22();
    const auto a = build_lts(s, SemanticsKind::P2pFifo, 2);
    const auto b = build_lts(s, SemanticsKind::P2pFifo, 2);
    CHECK(a.states == b.states);
    CHECK(a.edges == b.edges);
    CHECK(a.initial == b.initial);

    Limits tight;
    tight.max_states = 3;
    CHECK_THROWS_AS(build_lts(s, SemanticsKind::P2pFifo, 2, tight), StateLimitError);
}

TEST_CASE("dot export") {
    const System& s = reduce::builtin_system("ring-pingpong").system;
    const auto lts = build_lts(s, SemanticsKind::P2pFifo, 1);
    std::ostringstream out;
    write_dot(out, lts);
    const std::string dot = out.str();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("!a") != std::string::npos);
    CHECK(dot.find("1>2=a") != std::string::npos);
}
