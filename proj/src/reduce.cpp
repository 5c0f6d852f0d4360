#include "syncheck/reduce.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "syncheck/errors.hpp"

namespace syncheck::reduce {

const char* const kCutLetterName = "cut";

void TilingInstance::validate() const {
    const int n = static_cast<int>(tiles.size());
    if (n == 0) throw ValidationError("no tiles");
    std::set<std::string> names(tiles.begin(), tiles.end());
    if (static_cast<int>(names.size()) != n) throw ValidationError("duplicate tile name");
    auto in_range = [n](int t) { return t >= 0 && t < n; };
    if (!in_range(initial_tile) || !in_range(final_tile) || !in_range(blank))
        throw ValidationError("tile index out of range");
    for (const auto& [a, b] : horizontal)
        if (!in_range(a) || !in_range(b)) throw ValidationError("tile index out of range");
    for (const auto& [a, b] : vertical)
        if (!in_range(a) || !in_range(b)) throw ValidationError("tile index out of range");
    for (int t = 0; t < n; ++t)
        if (!horizontal.count({t, blank}) || !vertical.count({t, blank}))
            throw ValidationError("padding tile must be compatible to the right of and below '" +
                                  tiles[static_cast<size_t>(t)] + "'");
}

std::optional<LetterId> FifoAutomaton::find_letter(std::string_view name) const {
    for (LetterId a = 0; a < static_cast<LetterId>(alphabet.size()); ++a)
        if (alphabet[static_cast<size_t>(a)] == name) return a;
    return std::nullopt;
}

std::vector<PeerTransition> FifoAutomaton::from(StateId state) const {
    std::vector<PeerTransition> out;
    for (const PeerTransition& t : transitions)
        if (t.from == state) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

void FifoAutomaton::validate() const {
    const auto nstates = static_cast<StateId>(state_names.size());
    const auto nletters = static_cast<LetterId>(alphabet.size());
    if (nstates == 0) throw ValidationError("automaton has no states");
    if (initial < 0 || initial >= nstates) throw ValidationError("unknown initial state");
    std::set<std::string> names(state_names.begin(), state_names.end());
    if (static_cast<StateId>(names.size()) != nstates)
        throw ValidationError("duplicate state name");
    std::set<std::string> letters(alphabet.begin(), alphabet.end());
    if (static_cast<LetterId>(letters.size()) != nletters)
        throw ValidationError("duplicate letter");
    for (const PeerTransition& t : transitions) {
        if (t.from < 0 || t.from >= nstates || t.to < 0 || t.to >= nstates)
            throw ValidationError("transition references an unknown state");
        if (t.action.letter < 0 || t.action.letter >= nletters)
            throw ValidationError("transition references an unknown letter");
    }
}

FifoAutomaton tiling_to_fifo(const TilingInstance& instance) {
    instance.validate();
    FifoAutomaton a;
    a.name = instance.name + "-fifo";
    a.alphabet = instance.tiles;
    const LetterId cut = static_cast<LetterId>(a.alphabet.size());
    a.alphabet.push_back(kCutLetterName);

    const int n = static_cast<int>(instance.tiles.size());
    auto tile_name = [&](int t) { return instance.tiles[static_cast<size_t>(t)]; };
    auto letter_name = [&](int t) { return t == n ? std::string(kCutLetterName) : tile_name(t); };

    std::map<std::string, StateId> ids;
    auto state = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        const StateId id = static_cast<StateId>(a.state_names.size());
        a.state_names.push_back(name);
        ids.emplace(name, id);
        return id;
    };

    const StateId q0 = state("q0");
    const StateId q1 = state("q1");
    a.initial = q0;
    auto first = [&](int t) { return state("first(" + tile_name(t) + ")"); };
    auto below = [&](int t) { return state("below(" + tile_name(t) + ")"); };
    auto left = [&](int t) { return state("left(" + tile_name(t) + ")"); };
    auto left_below = [&](int t, int u) {
        return state("leftbelow(" + tile_name(t) + "," + letter_name(u) + ")");
    };

    auto add = [&](StateId from, Action act, StateId to) {
        a.transitions.push_back({from, act, to});
    };

    add(q0, snd(instance.initial_tile), first(instance.initial_tile));
    for (const auto& [t, u] : instance.horizontal) add(first(t), snd(u), first(u));
    for (int t = 0; t < n; ++t) add(first(t), snd(cut), q1);
    for (int t = 0; t < n; ++t) add(q1, rcv(t), below(t));
    for (const auto& [t, u] : instance.vertical) add(below(t), snd(u), left(u));
    for (int t = 0; t < n; ++t) {
        for (int u = 0; u <= n; ++u) add(left(t), rcv(u), left_below(t, u));
        add(left_below(t, n), snd(cut), q1);
    }
    for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (instance.horizontal.count({t, v}) && instance.vertical.count({u, v}))
                    add(left_below(t, u), snd(v), left(v));

    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                        a.transitions.end());
    a.validate();
    return a;
}

namespace {

struct FifoSuccessor {
    Action action;
    FifoConfig config;
};

std::vector<FifoSuccessor> fifo_successors(const FifoAutomaton& automaton, int bound,
                                           const FifoConfig& config) {
    std::vector<FifoSuccessor> out;
    for (const PeerTransition& t : automaton.from(config.state)) {
        if (t.action.send) {
            if (config.queue.size() >= static_cast<size_t>(bound)) continue;
            FifoConfig next{t.to, config.queue};
            next.queue.push_back(t.action.letter);
            out.push_back({t.action, std::move(next)});
        } else {
            if (config.queue.empty() || config.queue.front() != t.action.letter) continue;
            FifoConfig next{t.to, {config.queue.begin() + 1, config.queue.end()}};
            out.push_back({t.action, std::move(next)});
        }
    }
    return out;
}

}  // namespace

R1R2Report check_r1_r2(const FifoAutomaton& automaton, int bound, int depth) {
    automaton.validate();
    R1R2Report report;
    report.bound = bound;
    report.depth = depth;
    report.r2_holds = true;
    for (const PeerTransition& t : automaton.from(automaton.initial))
        if (!t.action.send) report.r2_holds = false;

    const FifoConfig init{automaton.initial, {}};
    std::map<FifoConfig, std::pair<FifoConfig, Action>> parent;
    std::map<FifoConfig, int> dist;
    std::deque<FifoConfig> work{init};
    dist[init] = 0;
    auto rebuild = [&](FifoConfig final_config, Action last) {
        Trace trace{last};
        FifoConfig walk = std::move(final_config);
        while (walk != init) {
            auto& [prev, act] = parent.at(walk);
            trace.push_back(act);
            walk = prev;
        }
        std::reverse(trace.begin(), trace.end());
        return trace;
    };
    while (!work.empty()) {
        FifoConfig cur = work.front();
        work.pop_front();
        const int d = dist.at(cur);
        if (d >= depth) continue;
        for (FifoSuccessor& s : fifo_successors(automaton, bound, cur)) {
            if (s.config.stable()) {  // nonempty trace to a stable configuration
                report.r1_violation = rebuild(cur, s.action);
                return report;
            }
            if (dist.count(s.config)) continue;
            dist[s.config] = d + 1;
            parent.emplace(s.config, std::make_pair(cur, s.action));
            work.push_back(std::move(s.config));
        }
    }
    return report;
}

std::vector<FifoRun> fifo_traces(const FifoAutomaton& automaton, int bound, int max_len) {
    automaton.validate();
    std::map<Trace, std::set<FifoConfig>> level{{Trace{}, {FifoConfig{automaton.initial, {}}}}};
    std::vector<FifoRun> out;
    for (int len = 0; len <= max_len; ++len) {
        std::map<Trace, std::set<FifoConfig>> next;
        for (auto& [trace, finals] : level) {
            out.push_back({trace, {finals.begin(), finals.end()}});
            if (len == max_len) continue;
            for (const FifoConfig& c : finals)
                for (FifoSuccessor& s : fifo_successors(automaton, bound, c)) {
                    Trace extended = trace;
                    extended.push_back(s.action);
                    next[std::move(extended)].insert(std::move(s.config));
                }
        }
        if (next.empty()) break;
        level = std::move(next);
    }
    std::sort(out.begin(), out.end(),
              [](const FifoRun& a, const FifoRun& b) { return a.trace < b.trace; });
    return out;
}

std::optional<Trace> find_trace_with_receive(const FifoAutomaton& automaton, LetterId letter,
                                             int bound, int depth) {
    const FifoConfig init{automaton.initial, {}};
    std::map<FifoConfig, std::pair<FifoConfig, Action>> parent;
    std::map<FifoConfig, int> dist;
    std::deque<FifoConfig> work{init};
    dist[init] = 0;
    while (!work.empty()) {
        FifoConfig cur = work.front();
        work.pop_front();
        const int d = dist.at(cur);
        if (d >= depth) continue;
        for (FifoSuccessor& s : fifo_successors(automaton, bound, cur)) {
            if (s.action == rcv(letter)) {
                Trace trace{s.action};
                FifoConfig walk = cur;
                while (walk != init) {
                    auto& [prev, act] = parent.at(walk);
                    trace.push_back(act);
                    walk = prev;
                }
                std::reverse(trace.begin(), trace.end());
                return trace;
            }
            if (dist.count(s.config)) continue;
            dist[s.config] = d + 1;
            parent.emplace(s.config, std::make_pair(cur, s.action));
            work.push_back(std::move(s.config));
        }
    }
    return std::nullopt;
}

Encoding::Encoding(const FifoAutomaton& automaton) {
    static constexpr std::pair<PeerId, PeerId> kChannels[5] = {
        {0, 1}, {0, 2}, {2, 0}, {2, 1}, {1, 2}};
    static constexpr const char* kSuffix[5] = {"_12", "_13", "_31", "_32", "_23"};
    std::vector<Letter> letters;
    for (const std::string& base : automaton.alphabet)
        for (int d = 0; d < 5; ++d)
            letters.push_back({base + kSuffix[d], kChannels[d].first, kChannels[d].second});
    messages_ = MessageSet(3, std::move(letters));
}

namespace {

struct PeerBuilder {
    Peer peer;
    std::map<std::string, StateId> ids;

    StateId state(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        const StateId id = static_cast<StateId>(peer.state_names.size());
        peer.state_names.push_back(name);
        ids.emplace(name, id);
        return id;
    }
    void add(StateId from, Action act, StateId to) { peer.transitions.push_back({from, act, to}); }
};

Peer build_peer1(const FifoAutomaton& a, const Encoding& enc) {
    PeerBuilder b;
    for (const std::string& name : a.state_names) b.state(name);
    b.peer.initial = a.initial;
    for (const PeerTransition& t : a.transitions) {
        if (t.action.send) {
            b.add(t.from, snd(enc.letter(t.action.letter, Direction::P1toP2)), t.to);
        } else {
            const std::string& letter = a.alphabet[static_cast<size_t>(t.action.letter)];
            const StateId wait = b.state("wait(" + a.state_names[static_cast<size_t>(t.from)] +
                                         ",?" + letter + "," +
                                         a.state_names[static_cast<size_t>(t.to)] + ")");
            b.add(t.from, snd(enc.letter(t.action.letter, Direction::P1toP3)), wait);
            b.add(wait, rcv(enc.letter(t.action.letter, Direction::P3toP1)), t.to);
        }
    }
    return b.peer;
}

Peer build_peer2(const FifoAutomaton& a, const Encoding& enc) {
    PeerBuilder b;
    const StateId q02 = b.state("q02");
    const StateId q12 = b.state("q12");
    for (LetterId x = 0; x < static_cast<LetterId>(a.alphabet.size()); ++x) {
        const std::string& letter = a.alphabet[static_cast<size_t>(x)];
        const StateId order = b.state("q_" + letter + "_1");
        const StateId done = b.state("q_" + letter + "_2");
        b.add(q02, rcv(enc.letter(x, Direction::P3toP2)), order);
        b.add(q12, rcv(enc.letter(x, Direction::P3toP2)), order);
        b.add(order, rcv(enc.letter(x, Direction::P1toP2)), done);
        b.add(done, snd(enc.letter(x, Direction::P2toP3)), q12);
    }
    b.peer.initial = q02;
    return b.peer;
}

Peer build_peer3(const FifoAutomaton& a, const Encoding& enc) {
    PeerBuilder b;
    const StateId q03 = b.state("q03");
    for (LetterId x = 0; x < static_cast<LetterId>(a.alphabet.size()); ++x) {
        const std::string& letter = a.alphabet[static_cast<size_t>(x)];
        const StateId s1 = b.state("q_" + letter + "_1");
        const StateId s2 = b.state("q_" + letter + "_2");
        const StateId s3 = b.state("q_" + letter + "_3");
        b.add(q03, rcv(enc.letter(x, Direction::P1toP3)), s1);
        b.add(s1, snd(enc.letter(x, Direction::P3toP2)), s2);
        b.add(s2, rcv(enc.letter(x, Direction::P2toP3)), s3);
        b.add(s3, snd(enc.letter(x, Direction::P3toP1)), q03);
    }
    b.peer.initial = q03;
    return b.peer;
}

// The always-receiving peer 2: any 1->2 message can be consumed from anywhere
// but the initial state; dequeue orders are acknowledged without touching the
// queue; the order for the special letter leads to the sink.
void extend_peer2_prime(PeerBuilder& b, const FifoAutomaton& a, const Encoding& enc,
                        LetterId special, StateId q02) {
    const StateId q02p = b.state("q02p");
    const StateId sink = b.state("qbot");
    std::vector<StateId> prime_states{q02, q02p, sink};
    for (LetterId x = 0; x < static_cast<LetterId>(a.alphabet.size()); ++x) {
        if (x == special) continue;
        prime_states.push_back(b.state("qp_" + a.alphabet[static_cast<size_t>(x)] + "_1"));
    }
    for (LetterId x = 0; x < static_cast<LetterId>(a.alphabet.size()); ++x) {
        b.add(q02, rcv(enc.letter(x, Direction::P1toP2)), q02p);
        for (StateId q : prime_states)
            if (q != q02) b.add(q, rcv(enc.letter(x, Direction::P1toP2)), q);
    }
    for (LetterId x = 0; x < static_cast<LetterId>(a.alphabet.size()); ++x) {
        if (x == special) continue;
        const StateId order = b.ids.at("qp_" + a.alphabet[static_cast<size_t>(x)] + "_1");
        b.add(q02, rcv(enc.letter(x, Direction::P3toP2)), order);
        b.add(q02p, rcv(enc.letter(x, Direction::P3toP2)), order);
        b.add(order, snd(enc.letter(x, Direction::P2toP3)), q02p);
    }
    for (StateId q : prime_states)
        b.add(q, rcv(enc.letter(special, Direction::P3toP2)), sink);
}

System assemble(const FifoAutomaton& a, const Encoding& enc, Peer peer2,
                const std::string& suffix) {
    std::vector<Peer> peers;
    peers.push_back(build_peer1(a, enc));
    peers.push_back(std::move(peer2));
    peers.push_back(build_peer3(a, enc));
    return System(enc.messages(), std::move(peers), a.name + suffix);
}

LetterId check_special(const FifoAutomaton& a, LetterId special) {
    if (special < 0 || special >= static_cast<LetterId>(a.alphabet.size()))
        throw ValidationError("special letter is not in the automaton's alphabet");
    return special;
}

}  // namespace

System fifo_to_system(const FifoAutomaton& automaton) {
    automaton.validate();
    Encoding enc(automaton);
    return assemble(automaton, enc, build_peer2(automaton, enc), "-sa");
}

System fifo_to_system_prime(const FifoAutomaton& automaton, LetterId special) {
    automaton.validate();
    check_special(automaton, special);
    Encoding enc(automaton);
    PeerBuilder b;
    const StateId q02 = b.state("q02");
    b.peer.initial = q02;
    extend_peer2_prime(b, automaton, enc, special, q02);
    return assemble(automaton, enc, std::move(b.peer), "-sa-prime");
}

System fifo_to_system_merged(const FifoAutomaton& automaton, LetterId special) {
    automaton.validate();
    check_special(automaton, special);
    Encoding enc(automaton);
    PeerBuilder b;
    Peer p2 = build_peer2(automaton, enc);
    b.peer = p2;
    for (StateId s = 0; s < static_cast<StateId>(p2.state_names.size()); ++s)
        b.ids.emplace(p2.state_names[static_cast<size_t>(s)], s);
    extend_peer2_prime(b, automaton, enc, special, b.ids.at("q02"));
    return assemble(automaton, enc, std::move(b.peer), "-sa-merged");
}

Trace morphism_h(const FifoAutomaton& automaton, const Trace& fifo_trace) {
    Encoding enc(automaton);
    Trace out;
    for (Action act : fifo_trace) {
        const LetterId x = act.letter;
        if (act.send) {
            out.push_back(snd(enc.letter(x, Direction::P1toP2)));
        } else {
            out += rendezvous(enc.letter(x, Direction::P1toP3));
            out += rendezvous(enc.letter(x, Direction::P3toP2));
            out.push_back(rcv(enc.letter(x, Direction::P1toP2)));
            out += rendezvous(enc.letter(x, Direction::P2toP3));
            out += rendezvous(enc.letter(x, Direction::P3toP1));
        }
    }
    return out;
}

Trace morphism_h_prime(const FifoAutomaton& automaton, LetterId special,
                       const Trace& fifo_trace) {
    check_special(automaton, special);
    Encoding enc(automaton);
    Trace out;
    for (Action act : fifo_trace) {
        const LetterId x = act.letter;
        if (act.send) {
            out += rendezvous(enc.letter(x, Direction::P1toP2));
        } else if (x == special) {
            out += rendezvous(enc.letter(x, Direction::P1toP3));
            out += rendezvous(enc.letter(x, Direction::P3toP2));
        } else {
            out += rendezvous(enc.letter(x, Direction::P1toP3));
            out += rendezvous(enc.letter(x, Direction::P3toP2));
            out += rendezvous(enc.letter(x, Direction::P2toP3));
            out += rendezvous(enc.letter(x, Direction::P3toP1));
        }
    }
    return out;
}

Trace morphism_h_doubleprime(const FifoAutomaton& automaton, const Trace& system_trace) {
    Encoding enc(automaton);
    Trace out;
    for (Action act : system_trace) {
        if (enc.direction_of(act.letter) == Direction::P1toP2) {
            if (act.send) out += rendezvous(act.letter);
        } else {
            out.push_back(act);
        }
    }
    return out;
}

lang::Nfa lm_language(const FifoAutomaton& automaton, LetterId special) {
    automaton.validate();
    check_special(automaton, special);
    lang::Nfa nfa;
    nfa.alphabet = 2 * static_cast<int>(automaton.alphabet.size());
    nfa.states = static_cast<int>(automaton.state_names.size()) + 1;
    nfa.initial = automaton.initial;
    nfa.accepting.assign(static_cast<size_t>(nfa.states), 1);
    const int done = nfa.states - 1;  // after the final ?special
    for (const PeerTransition& t : automaton.transitions) {
        if (t.action == rcv(special))
            nfa.add_edge(t.from, action_symbol(t.action), done);
        else
            nfa.add_edge(t.from, action_symbol(t.action), t.to);
    }
    return nfa;
}

}  // namespace syncheck::reduce
