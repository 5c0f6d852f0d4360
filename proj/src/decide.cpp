#include "syncheck/decide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "syncheck/errors.hpp"
#include "syncheck/trace.hpp"

namespace syncheck::decide {

namespace {

lang::Nfa empty_like(const lang::Nfa& model) { return lang::Nfa::empty_language(model.alphabet); }

bool better_witness(const Witness& cand, const std::optional<Witness>& best) {
    if (!best) return true;
    // A violating send word beats any stable-pair violation; within one
    // component, shortest first, then lexicographic.
    const bool cand_pair = cand.stable_config.has_value();
    const bool best_pair = best->stable_config.has_value();
    if (cand_pair != best_pair) return !cand_pair;
    if (cand.send_word.size() != best->send_word.size())
        return cand.send_word.size() < best->send_word.size();
    return cand.send_word < best->send_word;
}

}  // namespace

SyncVerdict k_synchronizable(const System& system, SemanticsKind kind, int k,
                             bool language_only, const explore::Limits& limits) {
    if (k < 1) throw Error("k must be at least 1");
    const explore::BoundedLts lts0 = explore::build_lts(system, kind, 0, limits);
    const explore::BoundedLts ltsk = explore::build_lts(system, kind, k, limits);
    const explore::Observable obs0 = explore::observables(lts0);
    const explore::Observable obsk = explore::observables(ltsk);

    SyncVerdict verdict;
    verdict.k = k;
    verdict.semantics = kind;
    verdict.states = ltsk.states.size();
    verdict.edges = ltsk.edges.size();

    std::optional<Witness> best;
    if (auto word = lang::counterexample_word(obsk.send_language, obs0.send_language)) {
        Witness w{std::move(*word), std::nullopt};
        if (better_witness(w, best)) best = std::move(w);
    }
    if (!language_only) {
        for (const auto& [config, nfa_k] : obsk.stable_map) {
            auto it = obs0.stable_map.find(config);
            const lang::Nfa nfa_0 = it == obs0.stable_map.end() ? empty_like(nfa_k) : it->second;
            if (auto word = lang::counterexample_word(nfa_k, nfa_0)) {
                Witness w{std::move(*word), config};
                if (better_witness(w, best)) best = std::move(w);
            }
        }
    }
    verdict.equal = !best.has_value();
    verdict.witness = std::move(best);
    return verdict;
}

SyncVerdict ring_synchronizable(const System& system, const explore::Limits& limits) {
    if (!is_oriented_ring(topology(system.messages())))
        throw PreconditionError("topology is not an oriented ring");
    return k_synchronizable(system, SemanticsKind::P2pFifo, 1, false, limits);
}

bool is_normalized(const Trace& trace) {
    size_t i = 0;
    while (i + 1 < trace.size() && trace[i].send && !trace[i + 1].send &&
           trace[i].letter == trace[i + 1].letter)
        i += 2;
    for (; i < trace.size(); ++i)
        if (!trace[i].send) return false;
    return true;
}

Trace normalize_trace(const System& system, const Trace& trace,
                      const explore::Limits& limits) {
    if (!ring_synchronizable(system, limits).equal)
        throw PreconditionError("system is not 1-synchronizable");
    return normalize_trace_unchecked(system, trace);
}

Trace normalize_trace_unchecked(const System& system, const Trace& trace) {
    if (!is_oriented_ring(topology(system.messages())))
        throw PreconditionError("topology is not an oriented ring");
    {
        const RunResult r = run(system, SemanticsKind::P2pFifo, trace);
        if (!r.ok)
            throw Error("trace is not executable (failed at index " +
                        std::to_string(r.failed_index) + ")");
    }

    const MessageSet& messages = system.messages();
    std::vector<LetterId> sync_prefix;  // letters of the synchronous prefix
    std::vector<LetterId> pending;      // letters of the send-only suffix

    for (Action act : trace) {
        if (act.send) {
            pending.push_back(act.letter);
            continue;
        }
        // The pending sends from the receiver's predecessor must start with
        // the received letter; rendezvous it and keep the others pending,
        // other-source sends first.
        const PeerId src = messages.letter(act.letter).src;
        std::vector<LetterId> same, other;
        for (LetterId a : pending)
            (messages.letter(a).src == src ? same : other).push_back(a);
        if (same.empty() || same.front() != act.letter)
            throw Error("normalization failed: receive of " +
                        messages.letter(act.letter).name + " does not match the oldest " +
                        "pending send of its channel");
        sync_prefix.push_back(act.letter);
        pending = std::move(other);
        pending.insert(pending.end(), same.begin() + 1, same.end());
    }

    Trace out;
    for (LetterId a : sync_prefix) {
        out.push_back(snd(a));
        out.push_back(rcv(a));
    }
    for (LetterId a : pending) out.push_back(snd(a));

    const RunResult check = run(system, SemanticsKind::P2pFifo, out);
    if (!check.ok)
        throw Error("normalization produced a non-executable trace (index " +
                    std::to_string(check.failed_index) + ")");
    return out;
}

RegularReachSet reach_representation(const System& system, const explore::Limits& limits) {
    const SyncVerdict verdict = ring_synchronizable(system, limits);
    if (!verdict.equal) throw PreconditionError("system is not 1-synchronizable");

    RegularReachSet reach;
    reach.system = system;
    const explore::BoundedLts lts0 = explore::build_lts(system, SemanticsKind::P2pFifo, 0, limits);
    reach.base = lts0.states;  // rendezvous states are exactly the stable bases

    const MessageSet& messages = system.messages();
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        lang::Nfa nfa;
        nfa.alphabet = messages.size();
        nfa.states = static_cast<int>(system.peer(i).state_names.size());
        nfa.accepting.assign(static_cast<size_t>(nfa.states), 1);
        for (const PeerTransition& t : system.peer(i).transitions)
            if (t.action.send) nfa.add_edge(t.from, t.action.letter, t.to);
        reach.peer_send.push_back(std::move(nfa));
    }

    ChannelTable table(messages, SemanticsKind::P2pFifo);
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        const PeerId next = (i + 1) % system.peer_count();
        // Find a letter on channel i -> i+1 to look up its slot; the ring shape
        // guarantees one exists.
        int slot = -1;
        for (LetterId a = 0; a < messages.size(); ++a)
            if (messages.letter(a).src == i && messages.letter(a).dst == next)
                slot = table.slot_of(a);
        reach.ring_slot.push_back(slot);
    }
    return reach;
}

bool reach_contains(const RegularReachSet& reach, const Configuration& config) {
    const System& system = reach.system;
    const int np = system.peer_count();
    if (static_cast<int>(config.control.size()) != np) return false;

    // Channels other than the ring edges can never hold anything.
    std::vector<char> is_ring_slot(config.buffers.size(), 0);
    for (int slot : reach.ring_slot)
        if (slot >= 0) is_ring_slot[static_cast<size_t>(slot)] = 1;
    for (size_t s = 0; s < config.buffers.size(); ++s)
        if (!is_ring_slot[s] && !config.buffers[s].empty()) return false;

    for (const Configuration& base : reach.base) {
        bool all = true;
        for (PeerId i = 0; i < np && all; ++i) {
            const int slot = reach.ring_slot[static_cast<size_t>(i)];
            static const std::vector<LetterId> kEmpty;
            const auto& word = slot < 0 ? kEmpty : config.buffers[static_cast<size_t>(slot)];
            all = lang::path_spells(reach.peer_send[static_cast<size_t>(i)],
                                    base.control[static_cast<size_t>(i)],
                                    config.control[static_cast<size_t>(i)],
                                    std::span<const int>(word));
        }
        if (all) return true;
    }
    return false;
}

std::optional<Trace> receive_drain(const System& system, SemanticsKind kind,
                                   const Configuration& config) {
    if (config.stable()) return Trace{};
    std::map<Configuration, std::pair<Configuration, Action>> parent;
    std::deque<Configuration> work{config};
    parent.emplace(config, std::make_pair(config, Action{}));
    while (!work.empty()) {
        Configuration cur = work.front();
        work.pop_front();
        for (Action act : enabled_actions(system, kind, cur)) {
            if (act.send) continue;
            for (Configuration& next : successors(system, kind, cur, act)) {
                if (parent.count(next)) continue;
                parent.emplace(next, std::make_pair(cur, act));
                if (next.stable()) {
                    Trace drain;
                    Configuration walk = next;
                    while (walk != config) {
                        auto& [prev, a] = parent.at(walk);
                        drain.push_back(a);
                        walk = prev;
                    }
                    std::reverse(drain.begin(), drain.end());
                    return drain;
                }
                work.push_back(std::move(next));
            }
        }
    }
    return std::nullopt;
}

namespace {

constexpr int kTau = -1;

struct CombinedLts {
    // Disjoint union of both send-LTSs; labels are letter ids, or kTau for
    // silent receive edges.
    int initial_lhs = 0;
    int initial_rhs = 0;
    std::vector<std::vector<std::pair<int, int>>> out;  // state -> (label, to)
};

CombinedLts combine(const explore::BoundedLts& lhs, const explore::BoundedLts& rhs) {
    CombinedLts c;
    const int offset = static_cast<int>(lhs.states.size());
    c.initial_lhs = lhs.initial;
    c.initial_rhs = rhs.initial + offset;
    c.out.resize(lhs.states.size() + rhs.states.size());
    auto add = [&c](const explore::BoundedLts& lts, int base) {
        for (const explore::Edge& e : lts.edges) {
            const int label = e.kind == explore::EdgeKind::Recv ? kTau : e.letter;
            c.out[static_cast<size_t>(e.from + base)].emplace_back(label, e.to + base);
        }
    };
    add(lhs, 0);
    add(rhs, offset);
    return c;
}

}  // namespace

bool branching_bisimilar(const explore::BoundedLts& lhs, const explore::BoundedLts& rhs) {
    if (!lhs.send_view || !rhs.send_view)
        throw PreconditionError("branching bisimilarity expects send-LTSs");
    const CombinedLts lts = combine(lhs, rhs);
    const int n = static_cast<int>(lts.out.size());

    std::vector<int> block(static_cast<size_t>(n), 0);
    while (true) {
        // Signature of s: the (label, target block) pairs reachable after a
        // silent path that stays inside s's block, dropping inert tau moves.
        std::map<std::vector<std::pair<int, int>>, int> sig_ids;
        std::vector<int> refined(static_cast<size_t>(n));
        for (int s = 0; s < n; ++s) {
            std::set<int> closure{s};
            std::deque<int> work{s};
            while (!work.empty()) {
                const int cur = work.front();
                work.pop_front();
                for (auto [label, to] : lts.out[static_cast<size_t>(cur)])
                    if (label == kTau && block[static_cast<size_t>(to)] == block[static_cast<size_t>(s)] &&
                        closure.insert(to).second)
                        work.push_back(to);
            }
            std::set<std::pair<int, int>> sig;
            sig.emplace(-2, block[static_cast<size_t>(s)]);  // keep refinement monotone
            for (int cur : closure)
                for (auto [label, to] : lts.out[static_cast<size_t>(cur)]) {
                    if (label == kTau && block[static_cast<size_t>(to)] == block[static_cast<size_t>(s)])
                        continue;
                    sig.emplace(label, block[static_cast<size_t>(to)]);
                }
            std::vector<std::pair<int, int>> key(sig.begin(), sig.end());
            auto [it, fresh] = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size()));
            (void)fresh;
            refined[static_cast<size_t>(s)] = it->second;
        }
        if (refined == block) break;
        block = std::move(refined);
    }
    return block[static_cast<size_t>(lts.initial_lhs)] == block[static_cast<size_t>(lts.initial_rhs)];
}

bool strongly_k_stable(const System& system, SemanticsKind kind, int k,
                       const explore::Limits& limits) {
    if (k < 0) throw Error("k must be nonnegative");
    const explore::BoundedLts lts = explore::build_lts(system, kind, k + 1, limits);
    for (const Configuration& c : lts.states)
        for (const auto& buf : c.buffers)
            if (buf.size() > static_cast<size_t>(k)) return false;
    return true;
}

}  // namespace syncheck::decide
