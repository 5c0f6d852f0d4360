#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "syncheck/builtins.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/io.hpp"
#include "syncheck/model.hpp"
#include "syncheck/trace.hpp"
#include "test_util.hpp"

using namespace syncheck;
using testutil::example22;
using testutil::letter;
using testutil::tokens;

TEST_CASE("message set invariants") {
    CHECK_THROWS_AS(MessageSet(1, {{"a", 0, 0}}), ValidationError);
    CHECK_THROWS_AS(MessageSet(2, {{"a", 0, 1}, {"a", 1, 0}}), ValidationError);
    CHECK_THROWS_AS(MessageSet(2, {{"a", 0, 3}}), ValidationError);
    const MessageSet m(2, {{"a", 0, 1}, {"b", 1, 0}});
    CHECK(m.display(0) == "a@1>2");
    CHECK(m.peer_of(snd(0)) == 0);
    CHECK(m.peer_of(rcv(0)) == 1);
}

TEST_CASE("system validation") {
    const System& s = example22();
    CHECK(s.peer_count() == 3);
    CHECK(s.messages().size() == 4);

    // A transition whose action belongs to another peer is rejected.
    MessageSet m(2, {{"a", 0, 1}});
    Peer p1{{"q0", "q1"}, 0, {{0, snd(0), 1}}};
    Peer bad{{"q0", "q1"}, 0, {{0, snd(0), 1}}};  // peer 2 sending a 1->2 letter
    CHECK_THROWS_AS(System(m, {p1, bad}), ValidationError);

    Peer dangling{{"q0"}, 0, {{0, rcv(0), 3}}};
    CHECK_THROWS_AS(System(m, {p1, dangling}), ValidationError);
}

TEST_CASE("topology") {
    const Topology t = topology(example22().messages());
    const std::vector<std::pair<PeerId, PeerId>> want{{0, 1}, {0, 2}, {1, 0}, {2, 1}};
    CHECK(t.edges == want);
    CHECK_FALSE(is_oriented_ring(t));

    CHECK(topology(MessageSet(3, {})).edges.empty());
    const Topology two = topology(MessageSet(2, {{"x", 0, 1}, {"y", 1, 0}}));
    CHECK(two.edges == std::vector<std::pair<PeerId, PeerId>>{{0, 1}, {1, 0}});
    CHECK(is_oriented_ring(two));
    CHECK_FALSE(is_oriented_ring(topology(MessageSet(3, {{"x", 0, 1}, {"y", 1, 2}}))));
    CHECK(is_oriented_ring(topology(MessageSet(3, {{"x", 0, 1}, {"y", 1, 2}, {"z", 2, 0}}))));
}

TEST_CASE("initial configuration") {
    const System& s = example22();
    const Configuration c = initial_configuration(s, SemanticsKind::P2pFifo);
    CHECK(c.control == std::vector<StateId>{0, 0, 0});
    CHECK(c.buffers.size() == 6);  // ordered pairs of three peers
    CHECK(c.stable());

    const Configuration mc = initial_configuration(s, SemanticsKind::MailboxFifo);
    CHECK(mc.buffers.size() == 3);  // one queue per receiver

    const System& two = reduce::builtin_system("intro-sync").system;
    CHECK(initial_configuration(two, SemanticsKind::P2pFifo).control.size() == 2);
}

TEST_CASE("enabled actions") {
    const System& s = example22();
    const Configuration init = initial_configuration(s, SemanticsKind::P2pFifo);
    CHECK(enabled_actions(s, SemanticsKind::P2pFifo, init) ==
          std::vector<Action>{snd(letter(s, "a"))});

    const Configuration after = step(s, SemanticsKind::P2pFifo, init, snd(letter(s, "a")));
    const auto enabled = enabled_actions(s, SemanticsKind::P2pFifo, after);
    CHECK(std::count(enabled.begin(), enabled.end(), snd(letter(s, "a"))) == 1);
    CHECK(std::count(enabled.begin(), enabled.end(), rcv(letter(s, "a"))) == 1);
}

TEST_CASE("bag receives ignore arrival order") {
    // Receiver wants b first although a arrived first.
    MessageSet m(2, {{"a", 0, 1}, {"b", 0, 1}});
    Peer p1{{"q0", "q1", "q2"}, 0, {{0, snd(0), 1}, {1, snd(1), 2}}};
    Peer p2{{"q0", "q1", "q2"}, 0, {{0, rcv(1), 1}, {1, rcv(0), 2}}};
    const System s(m, {p1, p2});
    const Trace t = tokens(s, "!a !b ?b ?a");
    CHECK_FALSE(run(s, SemanticsKind::P2pFifo, t).ok);
    CHECK(run(s, SemanticsKind::P2pBag, t).ok);

    Configuration c = initial_configuration(s, SemanticsKind::P2pBag);
    c = step(s, SemanticsKind::P2pBag, c, snd(0));
    c = step(s, SemanticsKind::P2pBag, c, snd(1));
    const auto enabled = enabled_actions(s, SemanticsKind::P2pBag, c);
    CHECK(std::count(enabled.begin(), enabled.end(), rcv(1)) == 1);
}

TEST_CASE("mailbox queues order across senders") {
    // Two senders into one receiver: the mailbox imposes arrival order across
    // channels, the p2p discipline only per channel.
    MessageSet m(3, {{"a", 0, 2}, {"b", 1, 2}});
    Peer p1{{"q0", "q1"}, 0, {{0, snd(0), 1}}};
    Peer p2{{"q0", "q1"}, 0, {{0, snd(1), 1}}};
    Peer p3{{"q0", "q1", "q2"}, 0, {{0, rcv(1), 1}, {1, rcv(0), 2}}};
    const System s(m, {p1, p2, p3}, "two-senders");
    const Trace t{snd(0), snd(1), rcv(1), rcv(0)};  // receive b first
    CHECK(run(s, SemanticsKind::P2pFifo, t).ok);
    CHECK_FALSE(run(s, SemanticsKind::MailboxFifo, t).ok);
    CHECK(run(s, SemanticsKind::MailboxFifo, t).failed_index == 2);
    CHECK(run(s, SemanticsKind::P2pBag, t).ok);
}

TEST_CASE("single-peer systems explore to one silent state") {
    const System s(MessageSet(1, {}), {Peer{{"q0"}, 0, {}}}, "alone");
    const auto lts = explore::build_lts(s, SemanticsKind::P2pFifo, 2);
    CHECK(lts.states.size() == 1);
    CHECK(lts.edges.empty());
    CHECK_FALSE(is_oriented_ring(topology(s.messages())));
}

TEST_CASE("step") {
    const System& s = example22();
    const auto kind = SemanticsKind::P2pFifo;
    const Configuration init = initial_configuration(s, kind);
    const Configuration after = step(s, kind, init, snd(letter(s, "a")));
    CHECK(after.buffers[0] == std::vector<LetterId>{letter(s, "a")});
    CHECK(step(s, kind, after, rcv(letter(s, "a"))).stable());

    // FIFO head mismatch: receives must take the oldest message.
    Configuration skewed = init;
    skewed.buffers[0] = {letter(s, "b"), letter(s, "a")};
    CHECK_THROWS_AS(step(s, kind, skewed, rcv(letter(s, "a"))), NotEnabledError);
}

TEST_CASE("run reproduces the worked configuration") {
    const System& s = example22();
    const RunResult r = run(s, SemanticsKind::P2pFifo, testutil::example22_trace());
    REQUIRE(r.ok);
    REQUIRE(r.deterministic());
    const Configuration c = r.configuration();
    CHECK(s.peer(0).state_names[static_cast<size_t>(c.control[0])] == "q3");
    CHECK(s.peer(1).state_names[static_cast<size_t>(c.control[1])] == "q5");
    CHECK(s.peer(2).state_names[static_cast<size_t>(c.control[2])] == "q2");
    const LetterId a = letter(s, "a");
    CHECK(c.buffers[0] == std::vector<LetterId>{a, a});        // 1>2
    CHECK(c.buffers[2] == std::vector<LetterId>{letter(s, "d")});  // 2>1
    for (size_t slot : {1u, 3u, 4u, 5u}) CHECK(c.buffers[slot].empty());
}

TEST_CASE("run failures carry the offending index") {
    const System& s = example22();
    CHECK(run(s, SemanticsKind::P2pFifo, {}).ok);
    const RunResult r = run(s, SemanticsKind::P2pFifo, tokens(s, "?a"));
    CHECK_FALSE(r.ok);
    CHECK(r.failed_index == 0);
    const RunResult r2 = run(s, SemanticsKind::P2pFifo, tokens(s, "!a !a !b ?a ?a ?b ?b"));
    CHECK_FALSE(r2.ok);
    CHECK(r2.failed_index == 6);
}

TEST_CASE("each step moves one control and one buffer") {
    for (const char* name : {"example22", "genest-sync", "ring3-token", "intro-unsync"}) {
        const System& s = reduce::builtin_system(name).system;
        for (auto kind : {SemanticsKind::P2pFifo, SemanticsKind::MailboxFifo,
                          SemanticsKind::P2pBag}) {
            const auto lts = explore::build_lts(s, kind, 2);
            for (const Configuration& c : lts.states)
                for (Action act : enabled_actions(s, kind, c))
                    for (const Configuration& next : successors(s, kind, c, act)) {
                        int control_diff = 0;
                        for (size_t i = 0; i < c.control.size(); ++i)
                            control_diff += c.control[i] != next.control[i];
                        int buffer_diff = 0;
                        for (size_t i = 0; i < c.buffers.size(); ++i)
                            buffer_diff += c.buffers[i] != next.buffers[i];
                        CHECK(control_diff == 1);
                        CHECK(buffer_diff == 1);
                    }
        }
    }
}

namespace {

// Independent characterization: a trace runs iff it is FIFO and every peer
// projection labels a path in that peer's automaton.
bool labels_paths(const System& s, const Trace& t) {
    for (PeerId i = 0; i < s.peer_count(); ++i) {
        std::set<StateId> current{s.peer(i).initial};
        for (Action act : traces::peer_projection(s.messages(), t, i)) {
            std::set<StateId> next;
            for (StateId q : current)
                for (const PeerTransition& tr : s.peer(i).transitions)
                    if (tr.from == q && tr.action == act) next.insert(tr.to);
            if (next.empty()) return false;
            current = std::move(next);
        }
    }
    return true;
}

}  // namespace

TEST_CASE("run agrees with the FIFO + path characterization") {
    std::mt19937_64 rng(20240811);
    for (const char* name : {"example22", "intro-unsync", "ring-loop"}) {
        const System& s = reduce::builtin_system(name).system;
        for (int i = 0; i < 400; ++i) {
            Trace t = i % 2 == 0
                          ? testutil::random_trace(rng, s.messages(), 8)
                          : testutil::random_executable_trace(rng, s, SemanticsKind::P2pFifo, 8);
            const bool expected = traces::is_fifo(s.messages(), t) && labels_paths(s, t);
            CHECK(run(s, SemanticsKind::P2pFifo, t).ok == expected);
        }
    }
}

TEST_CASE("two-peer p2p and mailbox graphs agree modulo buffer keying") {
    for (const reduce::BuiltinSystem& entry : reduce::builtin_systems()) {
        if (entry.system.peer_count() != 2) continue;
        for (int k = 1; k <= 3; ++k) {
            const auto p2p = explore::build_lts(entry.system, SemanticsKind::P2pFifo, k);
            const auto mail = explore::build_lts(entry.system, SemanticsKind::MailboxFifo, k);
            REQUIRE(p2p.states.size() == mail.states.size());
            REQUIRE(p2p.edges.size() == mail.edges.size());
            // p2p slots are (1>2, 2>1); mailbox slots are (>1, >2).
            auto rekey = [](Configuration c) {
                std::swap(c.buffers[0], c.buffers[1]);
                return c;
            };
            std::set<Configuration> mapped;
            for (const Configuration& c : p2p.states) mapped.insert(rekey(c));
            CHECK(mapped == std::set<Configuration>(mail.states.begin(), mail.states.end()));
            std::set<std::tuple<Configuration, explore::EdgeKind, LetterId, Configuration>>
                p2p_edges, mail_edges;
            for (const explore::Edge& e : p2p.edges)
                p2p_edges.insert({rekey(p2p.states[static_cast<size_t>(e.from)]), e.kind,
                                  e.letter, rekey(p2p.states[static_cast<size_t>(e.to)])});
            for (const explore::Edge& e : mail.edges)
                mail_edges.insert({mail.states[static_cast<size_t>(e.from)], e.kind, e.letter,
                                   mail.states[static_cast<size_t>(e.to)]});
            CHECK(p2p_edges == mail_edges);
        }
    }
}
