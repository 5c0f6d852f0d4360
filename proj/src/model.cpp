#include "syncheck/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace syncheck {

MessageSet::MessageSet(int peer_count, std::vector<Letter> letters)
    : peer_count_(peer_count), letters_(std::move(letters)) {
    if (peer_count_ < 1) throw ValidationError("peer count must be at least 1");
    std::unordered_set<std::string> seen;
    for (const Letter& l : letters_) {
        if (l.name.empty()) throw ValidationError("empty letter name");
        if (!seen.insert(l.name).second)
            throw ValidationError("duplicate letter '" + l.name + "'");
        if (l.src < 0 || l.src >= peer_count_ || l.dst < 0 || l.dst >= peer_count_)
            throw ValidationError("letter '" + l.name + "' references an unknown peer");
        if (l.src == l.dst)
            throw ValidationError("self-loop channel: letter '" + l.name +
                                  "' has equal source and destination");
    }
}

std::optional<LetterId> MessageSet::find(std::string_view name) const {
    for (LetterId a = 0; a < size(); ++a)
        if (letters_[static_cast<size_t>(a)].name == name) return a;
    return std::nullopt;
}

std::string MessageSet::display(LetterId a) const {
    const Letter& l = letter(a);
    return l.name + "@" + std::to_string(l.src + 1) + ">" + std::to_string(l.dst + 1);
}

Topology topology(const MessageSet& messages) {
    std::set<std::pair<PeerId, PeerId>> edges;
    for (const Letter& l : messages.letters()) edges.emplace(l.src, l.dst);
    return Topology{messages.peer_count(), {edges.begin(), edges.end()}};
}

bool is_oriented_ring(const Topology& topo) {
    std::set<std::pair<PeerId, PeerId>> want;
    for (PeerId i = 0; i < topo.peer_count; ++i) want.emplace(i, (i + 1) % topo.peer_count);
    return std::set<std::pair<PeerId, PeerId>>(topo.edges.begin(), topo.edges.end()) == want;
}

std::string_view to_string(SemanticsKind kind) {
    switch (kind) {
        case SemanticsKind::P2pFifo: return "p2p";
        case SemanticsKind::MailboxFifo: return "mailbox";
        case SemanticsKind::P2pBag: return "bag";
    }
    return "?";
}

std::optional<SemanticsKind> semantics_from_string(std::string_view text) {
    if (text == "p2p") return SemanticsKind::P2pFifo;
    if (text == "mailbox") return SemanticsKind::MailboxFifo;
    if (text == "bag") return SemanticsKind::P2pBag;
    return std::nullopt;
}

System::System(MessageSet messages, std::vector<Peer> peers, std::string name)
    : name_(std::move(name)), messages_(std::move(messages)), peers_(std::move(peers)) {
    if (static_cast<int>(peers_.size()) != messages_.peer_count())
        throw ValidationError("peer count does not match the message set");
    by_state_.resize(peers_.size());
    for (PeerId i = 0; i < peer_count(); ++i) {
        const Peer& p = peers_[static_cast<size_t>(i)];
        const auto nstates = static_cast<StateId>(p.state_names.size());
        if (nstates == 0) throw ValidationError("peer has no states");
        if (p.initial < 0 || p.initial >= nstates)
            throw ValidationError("unknown initial state");
        auto& table = by_state_[static_cast<size_t>(i)];
        table.resize(static_cast<size_t>(nstates));
        for (const PeerTransition& t : p.transitions) {
            if (t.from < 0 || t.from >= nstates || t.to < 0 || t.to >= nstates)
                throw ValidationError("transition references an unknown state");
            if (t.action.letter < 0 || t.action.letter >= messages_.size())
                throw ValidationError("transition references an unknown letter");
            if (messages_.peer_of(t.action) != i)
                throw ValidationError(
                    "foreign action: peer " + std::to_string(i + 1) + " cannot perform " +
                    messages_.action_token(t.action));
            table[static_cast<size_t>(t.from)].push_back(t);
        }
        for (auto& row : table) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
    }
}

std::span<const PeerTransition> System::transitions_from(PeerId peer, StateId state) const {
    return by_state_[static_cast<size_t>(peer)][static_cast<size_t>(state)];
}

ChannelTable::ChannelTable(const MessageSet& messages, SemanticsKind kind)
    : kind_(kind), peer_count_(messages.peer_count()) {
    const int np = peer_count_;
    slot_count_ = kind == SemanticsKind::MailboxFifo ? np : np * (np - 1);
    slot_by_letter_.resize(static_cast<size_t>(messages.size()));
    for (LetterId a = 0; a < messages.size(); ++a) {
        const Letter& l = messages.letter(a);
        if (kind == SemanticsKind::MailboxFifo) {
            slot_by_letter_[static_cast<size_t>(a)] = l.dst;
        } else {
            // ordered pairs (i,j), i != j, in lexicographic order
            slot_by_letter_[static_cast<size_t>(a)] =
                l.src * (np - 1) + (l.dst < l.src ? l.dst : l.dst - 1);
        }
    }
}

std::string ChannelTable::slot_name(int slot) const {
    if (kind_ == SemanticsKind::MailboxFifo) return ">" + std::to_string(slot + 1);
    const int np = peer_count_;
    const int i = slot / (np - 1);
    int j = slot % (np - 1);
    if (j >= i) ++j;
    return std::to_string(i + 1) + ">" + std::to_string(j + 1);
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (StateId s : c.control) mix(static_cast<std::size_t>(s));
    for (const auto& buf : c.buffers) {
        mix(0xabcd + buf.size());
        for (LetterId a : buf) mix(static_cast<std::size_t>(a) + 17);
    }
    return h;
}

Configuration initial_configuration(const System& system, SemanticsKind kind) {
    Configuration c;
    c.control.reserve(static_cast<size_t>(system.peer_count()));
    for (const Peer& p : system.peers()) c.control.push_back(p.initial);
    c.buffers.resize(static_cast<size_t>(ChannelTable(system.messages(), kind).slot_count()));
    return c;
}

namespace {

bool receive_permitted(SemanticsKind kind, const std::vector<LetterId>& buf, LetterId a) {
    if (kind == SemanticsKind::P2pBag)
        return std::binary_search(buf.begin(), buf.end(), a);
    return !buf.empty() && buf.front() == a;
}

void apply_buffer(SemanticsKind kind, std::vector<LetterId>& buf, Action act) {
    if (act.send) {
        if (kind == SemanticsKind::P2pBag)
            buf.insert(std::upper_bound(buf.begin(), buf.end(), act.letter), act.letter);
        else
            buf.push_back(act.letter);
    } else {
        if (kind == SemanticsKind::P2pBag)
            buf.erase(std::lower_bound(buf.begin(), buf.end(), act.letter));
        else
            buf.erase(buf.begin());
    }
}

}  // namespace

std::vector<Action> enabled_actions(const System& system, SemanticsKind kind,
                                    const Configuration& config) {
    ChannelTable table(system.messages(), kind);
    std::vector<Action> out;
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        for (const PeerTransition& t :
             system.transitions_from(i, config.control[static_cast<size_t>(i)])) {
            if (!t.action.send) {
                const auto& buf = config.buffers[static_cast<size_t>(table.slot_of(t.action.letter))];
                if (!receive_permitted(kind, buf, t.action.letter)) continue;
            }
            out.push_back(t.action);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Configuration> successors(const System& system, SemanticsKind kind,
                                      const Configuration& config, Action action) {
    ChannelTable table(system.messages(), kind);
    const PeerId mover = system.messages().peer_of(action);
    const int slot = table.slot_of(action.letter);
    const auto& buf = config.buffers[static_cast<size_t>(slot)];
    if (!action.send && !receive_permitted(kind, buf, action.letter)) return {};

    std::vector<Configuration> out;
    for (const PeerTransition& t :
         system.transitions_from(mover, config.control[static_cast<size_t>(mover)])) {
        if (t.action != action) continue;
        Configuration next = config;
        next.control[static_cast<size_t>(mover)] = t.to;
        apply_buffer(kind, next.buffers[static_cast<size_t>(slot)], action);
        out.push_back(std::move(next));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Configuration step(const System& system, SemanticsKind kind, const Configuration& config,
                   Action action) {
    auto next = successors(system, kind, config, action);
    if (next.empty())
        throw NotEnabledError("action " + system.messages().action_token(action) +
                              " is not enabled");
    return next.front();
}

Configuration RunResult::configuration() const {
    Configuration c;
    for (const auto& states : peer_states) c.control.push_back(states.front());
    c.buffers = buffers;
    return c;
}

std::vector<Configuration> RunResult::configurations() const {
    std::vector<Configuration> out;
    Configuration base;
    base.buffers = buffers;
    base.control.assign(peer_states.size(), 0);
    out.push_back(base);
    for (size_t i = 0; i < peer_states.size(); ++i) {
        std::vector<Configuration> next;
        for (const Configuration& c : out)
            for (StateId s : peer_states[i]) {
                Configuration copy = c;
                copy.control[i] = s;
                next.push_back(std::move(copy));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

RunResult run(const System& system, SemanticsKind kind, const Trace& trace) {
    ChannelTable table(system.messages(), kind);
    RunResult r;
    r.peer_states.resize(static_cast<size_t>(system.peer_count()));
    for (PeerId i = 0; i < system.peer_count(); ++i)
        r.peer_states[static_cast<size_t>(i)] = {system.peer(i).initial};
    r.buffers.resize(static_cast<size_t>(table.slot_count()));

    for (size_t idx = 0; idx < trace.size(); ++idx) {
        const Action act = trace[idx];
        const PeerId mover = system.messages().peer_of(act);
        auto& buf = r.buffers[static_cast<size_t>(table.slot_of(act.letter))];
        if (!act.send && !receive_permitted(kind, buf, act.letter)) {
            r.failed_index = idx;
            return r;
        }
        std::vector<StateId> next;
        for (StateId s : r.peer_states[static_cast<size_t>(mover)])
            for (const PeerTransition& t : system.transitions_from(mover, s))
                if (t.action == act) next.push_back(t.to);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) {
            r.failed_index = idx;
            return r;
        }
        r.peer_states[static_cast<size_t>(mover)] = std::move(next);
        apply_buffer(kind, buf, act);
    }
    r.ok = true;
    return r;
}

bool runs_intersect(const RunResult& lhs, const RunResult& rhs) {
    if (!lhs.ok || !rhs.ok) return false;
    if (lhs.buffers != rhs.buffers) return false;
    for (size_t i = 0; i < lhs.peer_states.size(); ++i) {
        const auto& a = lhs.peer_states[i];
        const auto& b = rhs.peer_states[i];
        bool common = false;
        for (StateId s : a)
            if (std::binary_search(b.begin(), b.end(), s)) {
                common = true;
                break;
            }
        if (!common) return false;
    }
    return true;
}

}  // namespace syncheck
