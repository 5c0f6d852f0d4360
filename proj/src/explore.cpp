#include "syncheck/explore.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <unordered_map>

#include "syncheck/errors.hpp"

namespace syncheck::explore {

namespace {

struct Successor {
    EdgeKind kind;
    LetterId letter;
    Configuration config;
};

// Rendezvous steps: a send transition whose receive is immediately taken by
// the destination peer; buffers stay untouched.
void sync_successors(const System& system, const Configuration& config,
                     std::vector<Successor>& out) {
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        for (const PeerTransition& ts :
             system.transitions_from(i, config.control[static_cast<size_t>(i)])) {
            if (!ts.action.send) continue;
            const PeerId j = system.messages().letter(ts.action.letter).dst;
            for (const PeerTransition& tr :
                 system.transitions_from(j, config.control[static_cast<size_t>(j)])) {
                if (tr.action.send || tr.action.letter != ts.action.letter) continue;
                Configuration next = config;
                next.control[static_cast<size_t>(i)] = ts.to;
                next.control[static_cast<size_t>(j)] = tr.to;
                out.push_back({EdgeKind::Sync, ts.action.letter, std::move(next)});
            }
        }
    }
}

void bounded_successors(const System& system, SemanticsKind kind, const ChannelTable& table,
                        int bound, const Configuration& config, std::vector<Successor>& out) {
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        for (const PeerTransition& t :
             system.transitions_from(i, config.control[static_cast<size_t>(i)])) {
            const int slot = table.slot_of(t.action.letter);
            const auto& buf = config.buffers[static_cast<size_t>(slot)];
            if (t.action.send) {
                if (buf.size() >= static_cast<size_t>(bound)) continue;
            } else {
                const bool ok = kind == SemanticsKind::P2pBag
                                    ? std::binary_search(buf.begin(), buf.end(), t.action.letter)
                                    : (!buf.empty() && buf.front() == t.action.letter);
                if (!ok) continue;
            }
            Configuration next = config;
            next.control[static_cast<size_t>(i)] = t.to;
            auto& nbuf = next.buffers[static_cast<size_t>(slot)];
            if (t.action.send) {
                if (kind == SemanticsKind::P2pBag)
                    nbuf.insert(std::upper_bound(nbuf.begin(), nbuf.end(), t.action.letter),
                                t.action.letter);
                else
                    nbuf.push_back(t.action.letter);
            } else {
                if (kind == SemanticsKind::P2pBag)
                    nbuf.erase(std::lower_bound(nbuf.begin(), nbuf.end(), t.action.letter));
                else
                    nbuf.erase(nbuf.begin());
            }
            out.push_back({t.action.send ? EdgeKind::Send : EdgeKind::Recv, t.action.letter,
                           std::move(next)});
        }
    }
}

}  // namespace

std::optional<int> BoundedLts::state_index(const Configuration& config) const {
    auto it = std::lower_bound(states.begin(), states.end(), config);
    if (it == states.end() || *it != config) return std::nullopt;
    return static_cast<int>(it - states.begin());
}

BoundedLts build_lts(const System& system, SemanticsKind kind, int bound,
                     const Limits& limits) {
    if (bound < 0) throw Error("negative buffer bound");
    BoundedLts lts;
    lts.system = system;
    lts.semantics = kind;
    lts.bound = bound;

    ChannelTable table(system.messages(), kind);
    const Configuration init = initial_configuration(system, kind);

    std::unordered_map<Configuration, int, ConfigurationHash> index;
    std::vector<Configuration> discovered;
    std::deque<int> work;
    struct RawEdge {
        int from;
        EdgeKind kind;
        LetterId letter;
        int to;
    };
    std::vector<RawEdge> raw_edges;

    auto intern = [&](Configuration c) {
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(discovered.size());
        if (discovered.size() >= limits.max_states)
            throw StateLimitError("state ceiling of " + std::to_string(limits.max_states) +
                                  " exceeded");
        index.emplace(c, id);
        discovered.push_back(std::move(c));
        work.push_back(id);
        return id;
    };

    intern(init);
    std::vector<Successor> succ;
    while (!work.empty()) {
        const int id = work.front();
        work.pop_front();
        succ.clear();
        const Configuration current = discovered[static_cast<size_t>(id)];
        if (bound == 0)
            sync_successors(system, current, succ);
        else
            bounded_successors(system, kind, table, bound, current, succ);
        for (Successor& s : succ)
            raw_edges.push_back({id, s.kind, s.letter, intern(std::move(s.config))});
    }

    // Renumber canonically so results do not depend on discovery order.
    std::vector<int> order(discovered.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return discovered[static_cast<size_t>(a)] < discovered[static_cast<size_t>(b)];
    });
    std::vector<int> rank(order.size());
    for (size_t i = 0; i < order.size(); ++i) rank[static_cast<size_t>(order[i])] = static_cast<int>(i);

    lts.states.resize(discovered.size());
    for (size_t i = 0; i < discovered.size(); ++i)
        lts.states[static_cast<size_t>(rank[i])] = std::move(discovered[i]);
    lts.initial = rank[0];
    lts.edges.reserve(raw_edges.size());
    for (const RawEdge& e : raw_edges)
        lts.edges.push_back({rank[static_cast<size_t>(e.from)], e.kind, e.letter,
                             rank[static_cast<size_t>(e.to)]});
    std::sort(lts.edges.begin(), lts.edges.end());
    lts.edges.erase(std::unique(lts.edges.begin(), lts.edges.end()), lts.edges.end());

    lts.out.resize(lts.states.size());
    for (size_t i = 0; i < lts.edges.size(); ++i)
        lts.out[static_cast<size_t>(lts.edges[i].from)].push_back(static_cast<int>(i));
    return lts;
}

BoundedLts send_lts(const System& system, SemanticsKind kind, int bound,
                    const Limits& limits) {
    BoundedLts lts = build_lts(system, kind, bound, limits);
    lts.send_view = true;
    return lts;
}

Observable observables(const BoundedLts& lts) {
    Observable obs;
    lang::Nfa& nfa = obs.send_language;
    nfa.alphabet = lts.system.messages().size();
    nfa.states = static_cast<int>(lts.states.size());
    nfa.initial = lts.initial;
    nfa.accepting.assign(lts.states.size(), 1);
    for (const Edge& e : lts.edges)
        nfa.add_edge(e.from, e.kind == EdgeKind::Recv ? lang::Nfa::kSilent : e.letter, e.to);

    for (size_t i = 0; i < lts.states.size(); ++i) {
        if (!lts.states[i].stable()) continue;
        lang::Nfa entry = nfa;
        entry.accepting.assign(lts.states.size(), 0);
        entry.accepting[i] = 1;
        obs.stable_map.emplace(lts.states[i], std::move(entry));
    }
    return obs;
}

DeadlockReport deadlocks(const BoundedLts& lts) {
    DeadlockReport report;
    for (size_t i = 0; i < lts.states.size(); ++i) {
        if (!lts.out[i].empty()) continue;
        const Configuration& c = lts.states[i];
        bool all_final = true;
        for (PeerId p = 0; p < lts.system.peer_count(); ++p)
            if (!lts.system.state_is_final(p, c.control[static_cast<size_t>(p)])) {
                all_final = false;
                break;
            }
        if (!all_final)
            report.deadlocked.push_back(static_cast<int>(i));
        else if (c.stable())
            report.terminal.push_back(static_cast<int>(i));
        else
            report.terminal_orphan.push_back(static_cast<int>(i));
    }
    return report;
}

DrainReport drainable_to_stable(const BoundedLts& lts) {
    // Reverse reachability from stable states along receive edges.
    std::vector<char> drainable(lts.states.size(), 0);
    std::deque<int> work;
    for (size_t i = 0; i < lts.states.size(); ++i)
        if (lts.states[i].stable()) {
            drainable[i] = 1;
            work.push_back(static_cast<int>(i));
        }
    std::vector<std::vector<int>> rev(lts.states.size());
    for (const Edge& e : lts.edges)
        if (e.kind == EdgeKind::Recv) rev[static_cast<size_t>(e.to)].push_back(e.from);
    while (!work.empty()) {
        const int s = work.front();
        work.pop_front();
        for (int p : rev[static_cast<size_t>(s)])
            if (!drainable[static_cast<size_t>(p)]) {
                drainable[static_cast<size_t>(p)] = 1;
                work.push_back(p);
            }
    }

    DrainReport report;
    ChannelTable table(lts.system.messages(), lts.semantics);
    for (size_t i = 0; i < lts.states.size(); ++i) {
        if (drainable[i]) continue;
        report.all_drainable = false;
        std::string bufs;
        for (int slot = 0; slot < table.slot_count(); ++slot) {
            const auto& content = lts.states[i].buffers[static_cast<size_t>(slot)];
            if (content.empty()) continue;
            if (!bufs.empty()) bufs += ' ';
            bufs += table.slot_name(slot) + "=";
            for (size_t k = 0; k < content.size(); ++k) {
                if (k) bufs += ',';
                bufs += lts.system.messages().letter(content[k]).name;
            }
        }
        report.stuck.push_back({static_cast<int>(i), std::move(bufs)});
    }
    return report;
}

namespace {

void expand_edge(const Edge& e, Trace& trace) {
    switch (e.kind) {
        case EdgeKind::Send: trace.push_back(snd(e.letter)); break;
        case EdgeKind::Recv: trace.push_back(rcv(e.letter)); break;
        case EdgeKind::Sync:
            trace.push_back(snd(e.letter));
            trace.push_back(rcv(e.letter));
            break;
    }
}

void enumerate_rec(const BoundedLts& lts, int state, int budget, Trace& acc,
                   std::set<Trace>& out) {
    out.insert(acc);
    for (int idx : lts.out[static_cast<size_t>(state)]) {
        const Edge& e = lts.edges[static_cast<size_t>(idx)];
        const int cost = e.kind == EdgeKind::Sync ? 2 : 1;
        if (cost > budget) continue;
        const size_t len = acc.size();
        expand_edge(e, acc);
        enumerate_rec(lts, e.to, budget - cost, acc, out);
        acc.resize(len);
    }
}

}  // namespace

std::vector<Trace> enumerate_traces(const BoundedLts& lts, int max_actions) {
    std::set<Trace> out;
    Trace acc;
    enumerate_rec(lts, lts.initial, max_actions, acc, out);
    return {out.begin(), out.end()};
}

bool accepts_trace(const BoundedLts& lts, const Trace& trace) {
    std::set<int> current{lts.initial};
    size_t pos = 0;
    while (pos < trace.size()) {
        std::set<int> next;
        for (int s : current) {
            for (int idx : lts.out[static_cast<size_t>(s)]) {
                const Edge& e = lts.edges[static_cast<size_t>(idx)];
                if (e.kind == EdgeKind::Sync) {
                    if (pos + 1 < trace.size() && trace[pos] == snd(e.letter) &&
                        trace[pos + 1] == rcv(e.letter))
                        next.insert(e.to);
                } else {
                    const Action want = e.kind == EdgeKind::Send ? snd(e.letter) : rcv(e.letter);
                    if (trace[pos] == want) next.insert(e.to);
                }
            }
        }
        if (next.empty()) return false;
        pos += lts.bound == 0 ? 2 : 1;
        current = std::move(next);
    }
    return true;
}

std::string format_configuration(const System& system, SemanticsKind kind,
                                 const Configuration& config) {
    ChannelTable table(system.messages(), kind);
    std::string out = "[";
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        if (i) out += ' ';
        out += system.peer(i).state_names[static_cast<size_t>(config.control[static_cast<size_t>(i)])];
    }
    std::string bufs;
    for (int slot = 0; slot < table.slot_count(); ++slot) {
        const auto& content = config.buffers[static_cast<size_t>(slot)];
        if (content.empty()) continue;
        if (!bufs.empty()) bufs += ' ';
        bufs += table.slot_name(slot) + "=";
        for (size_t k = 0; k < content.size(); ++k) {
            if (k) bufs += ',';
            bufs += system.messages().letter(content[k]).name;
        }
    }
    if (!bufs.empty()) out += " | " + bufs;
    out += "]";
    return out;
}

std::string format_configuration(const BoundedLts& lts, int state) {
    return format_configuration(lts.system, lts.semantics,
                                lts.states[static_cast<size_t>(state)]);
}

void write_dot(std::ostream& out, const BoundedLts& lts) {
    out << "digraph lts {\n  rankdir=LR;\n";
    out << "  init [shape=point];\n";
    for (size_t i = 0; i < lts.states.size(); ++i) {
        out << "  s" << i << " [shape=box,label=\"" << format_configuration(lts, static_cast<int>(i))
            << "\"];\n";
    }
    out << "  init -> s" << lts.initial << ";\n";
    const MessageSet& m = lts.system.messages();
    for (const Edge& e : lts.edges) {
        std::string label;
        switch (e.kind) {
            case EdgeKind::Send: label = m.action_token(snd(e.letter)); break;
            case EdgeKind::Recv: label = m.action_token(rcv(e.letter)); break;
            case EdgeKind::Sync: label = "!?" + m.letter(e.letter).name; break;
        }
        out << "  s" << e.from << " -> s" << e.to << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
}

}  // namespace syncheck::explore
