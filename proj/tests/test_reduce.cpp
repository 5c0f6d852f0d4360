#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "syncheck/builtins.hpp"
#include "syncheck/decide.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/io.hpp"
#include "syncheck/props.hpp"
#include "syncheck/trace.hpp"

using namespace syncheck;
using namespace syncheck::reduce;

namespace {

const FifoAutomaton& example33() { return builtin_fifo("example33-A").automaton; }

LetterId fifo_letter(const FifoAutomaton& a, const std::string& name) {
    return *a.find_letter(name);
}

}  // namespace

TEST_CASE("tiling instance validation") {
    TilingInstance t = singleton_tiling();
    CHECK_NOTHROW(t.validate());
    t.horizontal.erase({0, 1});  // drop (t, blank) from H
    CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("tiling encoder") {
    const FifoAutomaton a = tiling_to_fifo(singleton_tiling());
    // alphabet is tiles plus the cut letter
    REQUIRE(a.alphabet.size() == 3);
    CHECK(a.alphabet[2] == kCutLetterName);

    // the only transition out of the initial state emits the initial tile
    const auto initial_out = a.from(a.initial);
    REQUIRE(initial_out.size() == 1);
    CHECK(initial_out[0].action == snd(fifo_letter(a, "t")));

    // the singleton instance admits a tiling: a bounded run reaches ?t
    const auto witness = find_trace_with_receive(a, fifo_letter(a, "t"), 4, 12);
    REQUIRE(witness.has_value());
    CHECK(witness->size() == 3);
    CHECK(witness->back() == rcv(fifo_letter(a, "t")));

    // no stable configuration is reachable by a nonempty trace within bounds
    const R1R2Report report = check_r1_r2(a, 4, 12);
    CHECK(report.r2_holds);
    CHECK_FALSE(report.r1_violation.has_value());
}

TEST_CASE("restriction checks on the two-letter automaton") {
    const FifoAutomaton& a = example33();
    const R1R2Report report = check_r1_r2(a, 2, 8);
    CHECK(report.r2_holds);
    REQUIRE(report.r1_violation.has_value());
    const LetterId m = fifo_letter(a, "m");
    CHECK(*report.r1_violation == Trace{snd(m), rcv(m)});

    FifoAutomaton bad = a;
    bad.transitions.push_back({bad.initial, rcv(0), bad.initial});
    CHECK_FALSE(check_r1_r2(bad, 2, 8).r2_holds);
}

TEST_CASE("queue encoding structure") {
    const FifoAutomaton& a = example33();
    const System sa = fifo_to_system(a);
    CHECK(sa.peer_count() == 3);
    CHECK(sa.messages().size() == 10);  // two letters, five channels each
    CHECK(sa.peer(0).state_names.size() == 4);  // q0, q1 and one wait state per dequeue
    CHECK(sa.peer(1).state_names.size() == 6);
    CHECK(sa.peer(2).state_names.size() == 7);

    // nothing rendezvous: the only synchronous send word is empty
    const auto obs = explore::observables(explore::build_lts(sa, SemanticsKind::P2pFifo, 0));
    CHECK(lang::language_equal(obs.send_language,
                               lang::Nfa::word_prefixes(sa.messages().size(), {})));
}

TEST_CASE("bounded traces of the encoding are the morphism images") {
    // At bound 1 the shared 1->2 channel serializes the protocol, so the trace
    // set is small; bound 2 interleaves queue content with order handling.
    const auto k1 = props::encoding_correspondence(example33(), 1, 10);
    INFO(k1.detail);
    CHECK(k1.ok);
    CHECK(k1.cases >= 16);
    const auto k2 = props::encoding_correspondence(example33(), 2, 10);
    INFO(k2.detail);
    CHECK(k2.ok);
    CHECK(k2.cases > k1.cases);
}

TEST_CASE("morphism images") {
    const FifoAutomaton& a = example33();
    const Encoding enc(a);
    const LetterId la = fifo_letter(a, "a");
    const MessageSet& m = enc.messages();

    const Trace ha = morphism_h(a, {snd(la)});
    REQUIRE(ha.size() == 1);
    CHECK(m.display(ha[0].letter) == "a_12@1>2");

    const Trace hra = morphism_h(a, {rcv(la)});
    CHECK(traces::to_tokens(m, hra) ==
          "!a_13 ?a_13 !a_32 ?a_32 ?a_12 !a_23 ?a_23 !a_31 ?a_31");

    const LetterId lm = fifo_letter(a, "m");
    CHECK(traces::to_tokens(m, morphism_h_prime(a, lm, {snd(la)})) == "!a_12 ?a_12");
    CHECK(traces::to_tokens(m, morphism_h_prime(a, lm, {rcv(la)})) ==
          "!a_13 ?a_13 !a_32 ?a_32 !a_23 ?a_23 !a_31 ?a_31");
    CHECK(traces::to_tokens(m, morphism_h_prime(a, lm, {rcv(lm)})) ==
          "!m_13 ?m_13 !m_32 ?m_32");

    // rewriting: 1->2 sends become rendezvous, their receives vanish
    const Trace mixed = traces::parse_tokens(m, "!a_12 !m_13 ?a_12");
    CHECK(traces::to_tokens(m, morphism_h_doubleprime(a, mixed)) == "!a_12 ?a_12 !m_13");
}

TEST_CASE("images of bounded automaton traces are bounded") {
    const FifoAutomaton& a = example33();
    const Encoding enc(a);
    const MessageSet& m = enc.messages();
    for (int k : {1, 2}) {
        for (const FifoRun& fr : fifo_traces(a, k, 8)) {
            const Trace image = morphism_h(a, fr.trace);
            CHECK(traces::is_k_bounded(m, image, std::max(k, 1)));
        }
    }
}

TEST_CASE("at-most-one-final-dequeue language") {
    const FifoAutomaton& a = example33();
    const LetterId lm = fifo_letter(a, "m");
    const lang::Nfa lm_nfa = lm_language(a, lm);

    // Independent automaton for the prefix closure of ((!a)*!m?a)*(!a)*!m?m.
    lang::Nfa expect;
    expect.alphabet = lm_nfa.alphabet;
    expect.states = 3;
    expect.accepting = {1, 1, 1};
    const int send_a = action_symbol(snd(fifo_letter(a, "a")));
    const int send_m = action_symbol(snd(lm));
    const int recv_a = action_symbol(rcv(fifo_letter(a, "a")));
    const int recv_m = action_symbol(rcv(lm));
    expect.add_edge(0, send_a, 0);
    expect.add_edge(0, send_m, 1);
    expect.add_edge(1, recv_a, 0);
    expect.add_edge(1, recv_m, 2);
    CHECK(lang::language_equal(lm_nfa, expect));

    // every accepted word has at most one ?m, and only at the end
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 0; len <= 8; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            if (lang::accepts(lm_nfa, w)) {
                const auto count = std::count(w.begin(), w.end(), recv_m);
                CHECK(count <= 1);
                if (count == 1) CHECK(w.back() == recv_m);
            }
            if (len == 8) continue;
            for (int s = 0; s < lm_nfa.alphabet; ++s) {
                auto copy = w;
                copy.push_back(s);
                next.push_back(std::move(copy));
            }
        }
        frontier = std::move(next);
    }

    // with no dequeue of m, the constraint is vacuous
    const FifoAutomaton& noqm = builtin_fifo("example33-A-noqm").automaton;
    lang::Nfa plain;
    plain.alphabet = 2 * static_cast<int>(noqm.alphabet.size());
    plain.states = static_cast<int>(noqm.state_names.size());
    plain.initial = noqm.initial;
    plain.accepting.assign(static_cast<size_t>(plain.states), 1);
    for (const PeerTransition& t : noqm.transitions)
        plain.add_edge(t.from, action_symbol(t.action), t.to);
    CHECK(lang::language_equal(lm_language(noqm, *noqm.find_letter("m")), plain));
}

TEST_CASE("rendezvous traces of the always-receiving variant") {
    const FifoAutomaton& a = example33();
    const auto result = props::prime_sync_traces(a, fifo_letter(a, "m"), 10);
    INFO(result.detail);
    CHECK(result.ok);
    CHECK(result.cases > 50);
}

TEST_CASE("the always-receiving variant is synchronizable at small bounds") {
    const FifoAutomaton& a = example33();
    const System prime = fifo_to_system_prime(a, fifo_letter(a, "m"));
    for (int k : {1, 2, 3}) {
        INFO("k=", k);
        CHECK(decide::k_synchronizable(prime, SemanticsKind::P2pFifo, k).equal);
    }
}

TEST_CASE("rewriting bounded traces into rendezvous form") {
    const FifoAutomaton& a = example33();
    const auto result = props::relay_rewrite(a, fifo_letter(a, "m"), 8);
    INFO(result.detail);
    CHECK(result.ok);
}

TEST_CASE("merged system detects the reception") {
    const FifoAutomaton& a = example33();
    const LetterId m = fifo_letter(a, "m");
    const auto result = props::merged_reception_equiv(a, m, 1, 12);
    INFO(result.detail);
    CHECK(result.ok);

    const FifoAutomaton& noqm = builtin_fifo("example33-A-noqm").automaton;
    const auto result2 = props::merged_reception_equiv(noqm, *noqm.find_letter("m"), 1, 12);
    INFO(result2.detail);
    CHECK(result2.ok);
}

TEST_CASE("merged observable is the union of the components") {
    const FifoAutomaton& a = example33();
    const auto result = props::observable_union(a, fifo_letter(a, "m"), 1);
    INFO(result.detail);
    CHECK(result.ok);
}

TEST_CASE("reduction pipeline end to end") {
    const TilingInstance instance = singleton_tiling();
    const FifoAutomaton a = tiling_to_fifo(instance);
    const LetterId final_tile = fifo_letter(a, instance.tiles[static_cast<size_t>(
                                                   instance.final_tile)]);
    REQUIRE(find_trace_with_receive(a, final_tile, 3, 12).has_value());
    const System merged = fifo_to_system_merged(a, final_tile);
    bool violated = false;
    for (int k = 1; k <= 3 && !violated; ++k)
        violated = !decide::k_synchronizable(merged, SemanticsKind::P2pFifo, k).equal;
    CHECK(violated);
}

TEST_CASE("registry") {
    CHECK(builtin_systems().size() >= 10);
    std::set<std::string> names;
    for (const BuiltinSystem& entry : builtin_systems()) CHECK(names.insert(entry.name).second);
    CHECK_THROWS_AS(builtin_system("no-such-system"), Error);
    CHECK_THROWS_WITH_AS(builtin_system(kMailboxPlaceholderName),
                         doctest::Contains("property tests"), Error);

    // at least four ring systems with both verdicts represented
    int ring_equal = 0, ring_differs = 0;
    for (const BuiltinSystem& entry : builtin_systems()) {
        if (!entry.ring) continue;
        (*entry.ring_equal ? ring_equal : ring_differs)++;
    }
    CHECK(ring_equal >= 2);
    CHECK(ring_differs >= 2);

    // generated names exist for the encoding family
    CHECK(builtin_system("example33-sa").system.peer_count() == 3);
    CHECK(builtin_fifo("tiling-singleton").automaton.alphabet.size() == 3);
}

TEST_CASE("generated systems serialize and reparse") {
    for (const BuiltinSystem& entry : builtin_systems()) {
        const std::string text = io::serialize_system(entry.system);
        const System reparsed = io::parse_system(text);
        CHECK(io::serialize_system(reparsed) == text);
    }
}
