#include "syncheck/props.hpp"

#include <algorithm>
#include <set>

#include "syncheck/decide.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/trace.hpp"

namespace syncheck::props {

namespace traces = syncheck::traces;

namespace {

CheckResult pass(std::string name, std::size_t cases, std::string detail = "") {
    return {std::move(name), true, cases, std::move(detail)};
}

CheckResult fail(std::string name, std::size_t cases, std::string detail) {
    return {std::move(name), false, cases, std::move(detail)};
}

std::vector<Trace> sync_traces_up_to(const System& system, int depth) {
    return explore::enumerate_traces(explore::build_lts(system, SemanticsKind::P2pFifo, 0),
                                     depth);
}

// Send sequences w (|w| <= max_n) executable after `base` when each send may
// buffer: base . !w1 ... !wn must run under p2p-fifo.
void send_bursts_rec(const System& system, const Trace& base, int max_n,
                     std::vector<LetterId>& acc, std::vector<std::vector<LetterId>>& out) {
    if (!acc.empty()) out.push_back(acc);
    if (static_cast<int>(acc.size()) == max_n) return;
    for (LetterId a = 0; a < system.messages().size(); ++a) {
        Trace candidate = base;
        for (LetterId x : acc) candidate.push_back(snd(x));
        candidate.push_back(snd(a));
        if (!run(system, SemanticsKind::P2pFifo, candidate).ok) continue;
        acc.push_back(a);
        send_bursts_rec(system, base, max_n, acc, out);
        acc.pop_back();
    }
}

std::vector<std::vector<LetterId>> send_bursts(const System& system, const Trace& base,
                                               int max_n) {
    std::vector<std::vector<LetterId>> out;
    std::vector<LetterId> acc;
    send_bursts_rec(system, base, max_n, acc, out);
    return out;
}

Trace rendezvous_burst(const std::vector<LetterId>& letters) {
    Trace out;
    for (LetterId a : letters) out += rendezvous(a);
    return out;
}

std::string describe(const MessageSet& messages, const Trace& trace) {
    return "'" + traces::to_tokens(messages, trace) + "'";
}

}  // namespace

CheckResult shuffle_projection_dichotomy(const MessageSet& messages) {
    const std::string name = "shuffle-projection-dichotomy";
    std::size_t cases = 0;
    for (LetterId a = 0; a < messages.size(); ++a)
        for (LetterId b = 0; b < messages.size(); ++b) {
            if (messages.letter(a).src == messages.letter(b).src) continue;
            const Trace ab = rendezvous(a) + rendezvous(b);
            const Trace ba = rendezvous(b) + rendezvous(a);
            for (const Trace& sigma : traces::shuffles(rendezvous(a), rendezvous(b))) {
                ++cases;
                for (PeerId i = 0; i < messages.peer_count(); ++i) {
                    const Trace p = traces::peer_projection(messages, sigma, i);
                    if (p != traces::peer_projection(messages, ab, i) &&
                        p != traces::peer_projection(messages, ba, i))
                        return fail(name, cases,
                                    "projection of " + describe(messages, sigma) + " on peer " +
                                        std::to_string(i + 1) + " matches neither order");
                }
            }
        }
    return pass(name, cases);
}

CheckResult send_send_diamond(const System& system, int depth) {
    const std::string name = "send-send-diamond";
    const MessageSet& messages = system.messages();
    std::size_t cases = 0;
    for (const Trace& tau : sync_traces_up_to(system, depth)) {
        if (!traces::is_synchronous(tau)) continue;
        for (LetterId a = 0; a < messages.size(); ++a) {
            Trace ta = tau;
            ta.push_back(snd(a));
            if (!run(system, SemanticsKind::P2pFifo, ta).ok) continue;
            for (LetterId b = 0; b < messages.size(); ++b) {
                if (messages.letter(a).src == messages.letter(b).src) continue;
                Trace tb = tau;
                tb.push_back(snd(b));
                if (!run(system, SemanticsKind::P2pFifo, tb).ok) continue;
                ++cases;
                const auto all = traces::shuffles(rendezvous(a), rendezvous(b));
                for (const Trace& sigma : all) {
                    if (!run(system, SemanticsKind::P2pFifo, tau + sigma).ok)
                        return fail(name, cases,
                                    "after " + describe(messages, tau) + ", shuffle " +
                                        describe(messages, sigma) + " is not executable");
                }
                for (size_t i = 0; i < all.size(); ++i)
                    for (size_t j = i + 1; j < all.size(); ++j)
                        if (!traces::system_equivalent(system, SemanticsKind::P2pFifo,
                                                       tau + all[i], tau + all[j]))
                            return fail(name, cases,
                                        "shuffles " + describe(messages, all[i]) + " and " +
                                            describe(messages, all[j]) + " diverge after " +
                                            describe(messages, tau));
            }
        }
    }
    return pass(name, cases);
}

CheckResult same_source_lifting(const System& system, int depth, int max_n) {
    const std::string name = "same-source-lifting";
    const MessageSet& messages = system.messages();
    std::size_t cases = 0;
    for (const Trace& tau : sync_traces_up_to(system, depth)) {
        if (!traces::is_synchronous(tau)) continue;
        for (const auto& burst : send_bursts(system, tau, max_n)) {
            const PeerId src = messages.letter(burst.front()).src;
            if (std::any_of(burst.begin(), burst.end(),
                            [&](LetterId x) { return messages.letter(x).src != src; }))
                continue;
            ++cases;
            const Trace lifted = tau + rendezvous_burst(burst);
            if (!run(system, SemanticsKind::P2pFifo, lifted).ok)
                return fail(name, cases,
                            "burst after " + describe(messages, tau) +
                                " does not lift to rendezvous");
        }
    }
    return pass(name, cases);
}

CheckResult generalized_diamond(const System& system, int depth, int max_nm) {
    const std::string name = "generalized-diamond";
    const MessageSet& messages = system.messages();
    std::size_t cases = 0;
    for (const Trace& tau : sync_traces_up_to(system, depth)) {
        if (!traces::is_synchronous(tau)) continue;
        const auto bursts = send_bursts(system, tau, max_nm);
        for (const auto& lhs : bursts)
            for (const auto& rhs : bursts) {
                bool disjoint = true;
                for (LetterId x : lhs)
                    for (LetterId y : rhs)
                        if (messages.letter(x).src == messages.letter(y).src) disjoint = false;
                if (!disjoint) continue;
                ++cases;
                const auto all =
                    traces::shuffles(rendezvous_burst(lhs), rendezvous_burst(rhs));
                std::vector<Trace> executed;
                for (const Trace& sigma : all) {
                    if (!run(system, SemanticsKind::P2pFifo, tau + sigma).ok)
                        return fail(name, cases,
                                    "after " + describe(messages, tau) + ", block shuffle " +
                                        describe(messages, sigma) + " is not executable");
                    executed.push_back(tau + sigma);
                }
                for (size_t i = 1; i < executed.size(); ++i)
                    if (!traces::system_equivalent(system, SemanticsKind::P2pFifo, executed[0],
                                                   executed[i]))
                        return fail(name, cases, "block shuffles diverge after " +
                                                     describe(messages, tau));
            }
    }
    return pass(name, cases);
}

CheckResult normalization_roundtrip(const System& system, int bound, int max_len) {
    const std::string name = "normalization-roundtrip";
    const MessageSet& messages = system.messages();
    if (!decide::ring_synchronizable(system).equal)
        return fail(name, 0, "system is not 1-synchronizable");
    std::size_t cases = 0;
    const auto lts = explore::build_lts(system, SemanticsKind::P2pFifo, bound);
    for (const Trace& tau : explore::enumerate_traces(lts, max_len)) {
        ++cases;
        Trace normalized;
        try {
            normalized = decide::normalize_trace_unchecked(system, tau);
        } catch (const Error& e) {
            return fail(name, cases,
                        "normalize failed on " + describe(messages, tau) + ": " + e.what());
        }
        if (!decide::is_normalized(normalized))
            return fail(name, cases, describe(messages, normalized) + " is not normalized");
        if (!traces::system_equivalent(system, SemanticsKind::P2pFifo, tau, normalized))
            return fail(name, cases,
                        describe(messages, tau) + " and its normalization diverge");
    }
    return pass(name, cases);
}

CheckResult reach_and_drain(const System& system, int bound) {
    const std::string name = "reach-and-drain";
    std::size_t cases = 0;
    const decide::RegularReachSet reach = decide::reach_representation(system);
    const auto lts = explore::build_lts(system, SemanticsKind::P2pFifo, bound);
    for (const Configuration& config : lts.states) {
        ++cases;
        if (!decide::reach_contains(reach, config))
            return fail(name, cases,
                        "explored configuration " +
                            explore::format_configuration(system, SemanticsKind::P2pFifo,
                                                          config) +
                            " is missing from the representation");
        if (!decide::receive_drain(system, SemanticsKind::P2pFifo, config))
            return fail(name, cases,
                        explore::format_configuration(system, SemanticsKind::P2pFifo, config) +
                            " cannot drain to a stable configuration");
    }
    return pass(name, cases);
}

CheckResult encoding_correspondence(const reduce::FifoAutomaton& automaton, int k,
                                    int max_len) {
    const std::string name = "encoding-correspondence";
    const System system = reduce::fifo_to_system(automaton);
    const reduce::Encoding enc(automaton);

    std::set<Trace> lhs;
    {
        const auto lts = explore::build_lts(system, SemanticsKind::P2pFifo, k);
        for (Trace& t : explore::enumerate_traces(lts, max_len)) lhs.insert(std::move(t));
    }

    std::set<Trace> rhs;
    auto add_prefixes = [&rhs, max_len](const Trace& trace) {
        const size_t limit = std::min(trace.size(), static_cast<size_t>(max_len));
        for (size_t len = 0; len <= limit; ++len)
            rhs.insert(Trace(trace.begin(), trace.begin() + static_cast<long>(len)));
    };
    for (const reduce::FifoRun& fr : reduce::fifo_traces(automaton, k, max_len)) {
        const Trace image = reduce::morphism_h(automaton, fr.trace);
        add_prefixes(image);
        for (const reduce::FifoConfig& final_config : fr.finals)
            for (const PeerTransition& t : automaton.from(final_config.state)) {
                if (t.action.send) continue;
                Trace blocked = image;
                blocked += rendezvous(enc.letter(t.action.letter, reduce::Direction::P1toP3));
                blocked += rendezvous(enc.letter(t.action.letter, reduce::Direction::P3toP2));
                add_prefixes(blocked);
            }
    }

    if (lhs != rhs) {
        std::vector<Trace> diff;
        std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                      std::back_inserter(diff));
        const bool extra = lhs.count(diff.front()) > 0;
        return fail(name, lhs.size(),
                    std::string(extra ? "unexpected system trace " : "missing system trace ") +
                        describe(system.messages(), diff.front()));
    }
    return pass(name, lhs.size());
}

CheckResult prime_sync_traces(const reduce::FifoAutomaton& automaton, LetterId special,
                              int max_len) {
    const std::string name = "prime-sync-traces";
    const System system = reduce::fifo_to_system_prime(automaton, special);

    // Left side: prefixes of rendezvous traces.
    std::set<Trace> lhs;
    {
        const auto lts = explore::build_lts(system, SemanticsKind::P2pFifo, 0);
        for (const Trace& t : explore::enumerate_traces(lts, max_len)) {
            for (size_t len = 0; len <= t.size(); ++len)
                lhs.insert(Trace(t.begin(), t.begin() + static_cast<long>(len)));
        }
    }

    // Right side: prefixes of images of the at-most-one-final-?special words.
    std::set<Trace> rhs;
    const lang::Nfa lm = reduce::lm_language(automaton, special);
    std::set<Trace> words{{}};
    rhs.insert(Trace{});
    for (int len = 1; len <= max_len; ++len) {
        std::set<Trace> next;
        for (const Trace& w : words)
            for (LetterId x = 0; x < static_cast<LetterId>(automaton.alphabet.size()); ++x)
                for (Action act : {snd(x), rcv(x)}) {
                    Trace word = w;
                    word.push_back(act);
                    std::vector<int> symbols;
                    for (Action ac : word) symbols.push_back(reduce::action_symbol(ac));
                    if (!lang::accepts(lm, symbols)) continue;
                    const Trace image = reduce::morphism_h_prime(automaton, special, word);
                    const size_t limit = std::min(image.size(), static_cast<size_t>(max_len));
                    for (size_t l = 0; l <= limit; ++l)
                        rhs.insert(Trace(image.begin(), image.begin() + static_cast<long>(l)));
                    next.insert(std::move(word));
                }
        if (next.empty()) break;
        words = std::move(next);
    }

    if (lhs != rhs) {
        std::vector<Trace> diff;
        std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                      std::back_inserter(diff));
        const bool extra = lhs.count(diff.front()) > 0;
        return fail(name, lhs.size(),
                    std::string(extra ? "unexpected rendezvous trace " : "missing trace ") +
                        describe(system.messages(), diff.front()));
    }
    return pass(name, lhs.size());
}

CheckResult merged_reception_equiv(const reduce::FifoAutomaton& automaton, LetterId special,
                                   int k, int depth) {
    const std::string name = "merged-reception-equivalence";
    const System merged = reduce::fifo_to_system_merged(automaton, special);
    const auto witness_trace = reduce::find_trace_with_receive(automaton, special, k, depth);
    const decide::SyncVerdict verdict =
        decide::k_synchronizable(merged, SemanticsKind::P2pFifo, k);

    if (witness_trace.has_value() == verdict.equal)
        return fail(name, 1,
                    witness_trace ? "?special is reachable but the merged system passed"
                                  : "?special is unreachable but the merged system failed");
    if (witness_trace) {
        const reduce::Encoding enc(automaton);
        const LetterId ack = enc.letter(special, reduce::Direction::P2toP3);
        const auto& word = verdict.witness->send_word;
        if (std::find(word.begin(), word.end(), ack) == word.end())
            return fail(name, 1, "violating send word does not mention the acknowledgement");
    }
    return pass(name, 1);
}

CheckResult observable_union(const reduce::FifoAutomaton& automaton, LetterId special,
                             int k) {
    const std::string name = "observable-union";
    const System sa = reduce::fifo_to_system(automaton);
    const System prime = reduce::fifo_to_system_prime(automaton, special);
    const System merged = reduce::fifo_to_system_merged(automaton, special);

    const auto obs_sa = explore::observables(explore::build_lts(sa, SemanticsKind::P2pFifo, k));
    const auto obs_pr =
        explore::observables(explore::build_lts(prime, SemanticsKind::P2pFifo, k));
    const auto obs_mg =
        explore::observables(explore::build_lts(merged, SemanticsKind::P2pFifo, k));

    // Send languages: merged = union of the parts.
    lang::Nfa both = obs_sa.send_language;
    {
        const lang::Nfa& other = obs_pr.send_language;
        const int offset = both.states;
        both.states += other.states;
        both.accepting.insert(both.accepting.end(), other.accepting.begin(),
                              other.accepting.end());
        for (const lang::Nfa::Edge& e : other.edges)
            both.add_edge(e.from + offset, e.symbol, e.to + offset);
        const int fresh = both.add_state(true);
        both.add_edge(fresh, lang::Nfa::kSilent, both.initial);
        both.add_edge(fresh, lang::Nfa::kSilent, other.initial + offset);
        both.initial = fresh;
    }
    if (!lang::language_equal(obs_mg.send_language, both))
        return fail(name, 1, "merged send language is not the union of the components'");

    // Stable pairs, matched through state names (the merged peer keeps the
    // names of both variants).
    auto names_of = [](const System& system, const Configuration& c) {
        std::vector<std::string> out;
        for (PeerId i = 0; i < system.peer_count(); ++i)
            out.push_back(system.peer(i).state_names[static_cast<size_t>(
                c.control[static_cast<size_t>(i)])]);
        return out;
    };
    std::size_t cases = 1;
    for (const auto& [config, nfa] : obs_mg.stable_map) {
        const auto names = names_of(merged, config);
        lang::Nfa expect = lang::Nfa::empty_language(nfa.alphabet);
        bool found = false;
        for (const auto* side : {&obs_sa, &obs_pr}) {
            const System& sys = side == &obs_sa ? sa : prime;
            for (const auto& [c2, nfa2] : side->stable_map)
                if (names_of(sys, c2) == names && c2.buffers == config.buffers) {
                    if (!found) {
                        expect = nfa2;
                        found = true;
                    } else {
                        const int offset = expect.states;
                        expect.states += nfa2.states;
                        expect.accepting.insert(expect.accepting.end(), nfa2.accepting.begin(),
                                                nfa2.accepting.end());
                        for (const lang::Nfa::Edge& e : nfa2.edges)
                            expect.add_edge(e.from + offset, e.symbol, e.to + offset);
                        const int fresh = expect.add_state(false);
                        expect.add_edge(fresh, lang::Nfa::kSilent, expect.initial);
                        expect.add_edge(fresh, lang::Nfa::kSilent, nfa2.initial + offset);
                        expect.initial = fresh;
                    }
                }
        }
        ++cases;
        if (!lang::language_equal(nfa, expect))
            return fail(name, cases,
                        "stable-pair language mismatch at " +
                            explore::format_configuration(merged, SemanticsKind::P2pFifo,
                                                          config));
    }
    return pass(name, cases);
}

CheckResult relay_rewrite(const reduce::FifoAutomaton& automaton, LetterId special,
                          int max_len) {
    const std::string name = "relay-rewrite";
    const System system = reduce::fifo_to_system_prime(automaton, special);
    std::size_t cases = 0;
    const auto lts = explore::build_lts(system, SemanticsKind::P2pFifo, 2);
    for (const Trace& tau : explore::enumerate_traces(lts, max_len)) {
        ++cases;
        const Trace image = reduce::morphism_h_doubleprime(automaton, tau);
        if (!traces::is_synchronous_prefix(image))
            return fail(name, cases,
                        "rewrite of " + describe(system.messages(), tau) +
                            " is not a rendezvous prefix");
        if (!run(system, SemanticsKind::P2pFifo, image).ok)
            return fail(name, cases,
                        "rewrite of " + describe(system.messages(), tau) + " does not run");
        if (traces::send_projection(image) != traces::send_projection(tau))
            return fail(name, cases,
                        "rewrite of " + describe(system.messages(), tau) +
                            " changes the send word");
        // The rewrite drains channel 1->2, so the full configuration is only
        // preserved for traces that already ended stable.
        const RunResult result = run(system, SemanticsKind::P2pFifo, tau);
        const bool stable_end =
            std::all_of(result.buffers.begin(), result.buffers.end(),
                        [](const std::vector<LetterId>& b) { return b.empty(); });
        if (stable_end &&
            !traces::system_equivalent(system, SemanticsKind::P2pFifo, tau, image))
            return fail(name, cases,
                        "rewrite of " + describe(system.messages(), tau) + " diverges");
    }
    return pass(name, cases);
}

}  // namespace syncheck::props
