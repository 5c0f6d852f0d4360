#include "syncheck/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "syncheck/errors.hpp"

namespace syncheck::traces {

std::vector<LetterId> send_projection(const Trace& trace) {
    std::vector<LetterId> out;
    for (Action a : trace)
        if (a.send) out.push_back(a.letter);
    return out;
}

std::vector<LetterId> recv_projection(const Trace& trace) {
    std::vector<LetterId> out;
    for (Action a : trace)
        if (!a.send) out.push_back(a.letter);
    return out;
}

Trace peer_projection(const MessageSet& messages, const Trace& trace, PeerId peer) {
    Trace out;
    for (Action a : trace)
        if (messages.peer_of(a) == peer) out.push_back(a);
    return out;
}

Trace channel_projection(const MessageSet& messages, const Trace& trace, PeerId from,
                         PeerId to) {
    Trace out;
    for (Action a : trace) {
        const Letter& l = messages.letter(a.letter);
        if (l.src == from && l.dst == to) out.push_back(a);
    }
    return out;
}

std::optional<std::vector<LetterId>> buffer_after(const MessageSet& messages,
                                                  const Trace& trace, PeerId from,
                                                  PeerId to) {
    const Trace chan = channel_projection(messages, trace, from, to);
    const auto sends = send_projection(chan);
    const auto recvs = recv_projection(chan);
    if (recvs.size() > sends.size()) return std::nullopt;
    if (!std::equal(recvs.begin(), recvs.end(), sends.begin())) return std::nullopt;
    return std::vector<LetterId>(sends.begin() + static_cast<long>(recvs.size()), sends.end());
}

namespace {

// Walks the trace once, maintaining per-channel queues. Returns false as soon
// as a receive does not match the head of its queue; otherwise reports the
// maximal buffer length seen.
bool simulate_channels(const MessageSet& messages, const Trace& trace, size_t* max_len) {
    std::map<std::pair<PeerId, PeerId>, std::vector<LetterId>> queues;
    std::map<std::pair<PeerId, PeerId>, size_t> heads;
    size_t longest = 0;
    for (Action a : trace) {
        const Letter& l = messages.letter(a.letter);
        auto key = std::make_pair(l.src, l.dst);
        auto& q = queues[key];
        auto& h = heads[key];
        if (a.send) {
            q.push_back(a.letter);
            longest = std::max(longest, q.size() - h);
        } else {
            if (h >= q.size() || q[h] != a.letter) return false;
            ++h;
        }
    }
    if (max_len) *max_len = longest;
    return true;
}

}  // namespace

bool is_fifo(const MessageSet& messages, const Trace& trace) {
    return simulate_channels(messages, trace, nullptr);
}

bool is_k_bounded(const MessageSet& messages, const Trace& trace, int k) {
    size_t longest = 0;
    if (!simulate_channels(messages, trace, &longest)) return false;
    return longest <= static_cast<size_t>(k);
}

bool is_synchronous(const Trace& trace) {
    if (trace.size() % 2 != 0) return false;
    for (size_t i = 0; i < trace.size(); i += 2)
        if (!trace[i].send || trace[i + 1].send || trace[i].letter != trace[i + 1].letter)
            return false;
    return true;
}

bool is_synchronous_prefix(const Trace& trace) {
    if (trace.size() % 2 == 0) return is_synchronous(trace);
    if (!trace.back().send) return false;
    return is_synchronous(Trace(trace.begin(), trace.end() - 1));
}

bool is_stable(const MessageSet& messages, const Trace& trace) {
    const int np = messages.peer_count();
    for (PeerId i = 0; i < np; ++i)
        for (PeerId j = 0; j < np; ++j) {
            if (i == j) continue;
            auto w = buffer_after(messages, trace, i, j);
            if (!w || !w->empty()) return false;
        }
    return true;
}

bool causally_equivalent(const MessageSet& messages, const Trace& lhs, const Trace& rhs) {
    if (!is_fifo(messages, lhs) || !is_fifo(messages, rhs)) return false;
    for (PeerId i = 0; i < messages.peer_count(); ++i)
        if (peer_projection(messages, lhs, i) != peer_projection(messages, rhs, i))
            return false;
    return true;
}

bool system_equivalent(const System& system, SemanticsKind kind, const Trace& lhs,
                       const Trace& rhs) {
    return runs_intersect(run(system, kind, lhs), run(system, kind, rhs));
}

Trace sync_trace_of(const Trace& trace) {
    Trace out;
    for (LetterId a : send_projection(trace)) {
        out.push_back(snd(a));
        out.push_back(rcv(a));
    }
    return out;
}

namespace {

void shuffle_rec(const Trace& lhs, const Trace& rhs, size_t i, size_t j, Trace& acc,
                 std::set<Trace>& out) {
    if (i == lhs.size() && j == rhs.size()) {
        out.insert(acc);
        return;
    }
    if (i < lhs.size()) {
        acc.push_back(lhs[i]);
        shuffle_rec(lhs, rhs, i + 1, j, acc, out);
        acc.pop_back();
    }
    if (j < rhs.size()) {
        acc.push_back(rhs[j]);
        shuffle_rec(lhs, rhs, i, j + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Trace> shuffles(const Trace& lhs, const Trace& rhs) {
    std::set<Trace> out;
    Trace acc;
    acc.reserve(lhs.size() + rhs.size());
    shuffle_rec(lhs, rhs, 0, 0, acc, out);
    return {out.begin(), out.end()};
}

namespace {

// Backtracking over the causal class: pick the next action among the per-peer
// frontier heads, rejecting choices that break FIFO order or exceed the bound.
// Buffer contents are a function of the per-peer positions, so visited
// position vectors can be pruned.
struct BoundedReorderSearch {
    const MessageSet& messages;
    int bound;
    std::vector<Trace> per_peer;
    std::map<std::pair<PeerId, PeerId>, std::vector<LetterId>> queues;
    std::map<std::pair<PeerId, PeerId>, size_t> heads;
    std::vector<size_t> pos;
    std::set<std::vector<size_t>> visited;
    Trace acc;

    explicit BoundedReorderSearch(const MessageSet& m, const Trace& trace, int k)
        : messages(m), bound(k) {
        for (PeerId i = 0; i < m.peer_count(); ++i)
            per_peer.push_back(peer_projection(m, trace, i));
        pos.assign(per_peer.size(), 0);
    }

    std::optional<Trace> search() {
        if (done()) return acc;
        if (!visited.insert(pos).second) return std::nullopt;
        for (PeerId i = 0; i < static_cast<PeerId>(per_peer.size()); ++i) {
            const size_t p = pos[static_cast<size_t>(i)];
            if (p >= per_peer[static_cast<size_t>(i)].size()) continue;
            const Action act = per_peer[static_cast<size_t>(i)][p];
            if (!try_apply(act)) continue;
            pos[static_cast<size_t>(i)] = p + 1;
            acc.push_back(act);
            if (auto found = search()) return found;
            acc.pop_back();
            pos[static_cast<size_t>(i)] = p;
            undo(act);
        }
        return std::nullopt;
    }

    bool done() const {
        for (size_t i = 0; i < per_peer.size(); ++i)
            if (pos[i] < per_peer[i].size()) return false;
        return true;
    }

    bool try_apply(Action act) {
        const Letter& l = messages.letter(act.letter);
        auto key = std::make_pair(l.src, l.dst);
        auto& q = queues[key];
        auto& h = heads[key];
        if (act.send) {
            if (q.size() - h >= static_cast<size_t>(bound)) return false;
            q.push_back(act.letter);
        } else {
            if (h >= q.size() || q[h] != act.letter) return false;
            ++h;
        }
        return true;
    }

    void undo(Action act) {
        const Letter& l = messages.letter(act.letter);
        auto key = std::make_pair(l.src, l.dst);
        if (act.send)
            queues[key].pop_back();
        else
            --heads[key];
    }
};

}  // namespace

std::optional<Trace> exists_equiv_k_bounded(const MessageSet& messages, const Trace& trace,
                                            int k) {
    if (!is_fifo(messages, trace)) throw Error("exists_equiv_k_bounded requires a FIFO trace");
    if (k < 1) return std::nullopt;
    BoundedReorderSearch search(messages, trace, k);
    return search.search();
}

std::string to_tokens(const MessageSet& messages, const Trace& trace) {
    std::string out;
    for (Action a : trace) {
        if (!out.empty()) out += ' ';
        out += messages.action_token(a);
    }
    return out;
}

Trace parse_tokens(const MessageSet& messages, std::string_view text) {
    Trace out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != '!' && tok[0] != '?'))
            throw ParseError(0, "bad action token '" + tok + "' (expected !letter or ?letter)");
        auto id = messages.find(tok.substr(1));
        if (!id) throw ParseError(0, "unknown letter '" + tok.substr(1) + "'");
        out.push_back(Action{tok[0] == '!', *id});
    }
    return out;
}

}  // namespace syncheck::traces
