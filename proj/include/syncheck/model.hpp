#ifndef SYNCHECK_MODEL_HPP
#define SYNCHECK_MODEL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syncheck/errors.hpp"
#include "syncheck/types.hpp"

namespace syncheck {

struct Letter {
    std::string name;
    PeerId src = 0;
    PeerId dst = 0;
};

// Message alphabet with per-letter source and destination peers. Letter names
// are unique, so a letter determines its channel.
class MessageSet {
public:
    MessageSet() = default;
    MessageSet(int peer_count, std::vector<Letter> letters);  // throws ValidationError

    int peer_count() const { return peer_count_; }
    int size() const { return static_cast<int>(letters_.size()); }
    const Letter& letter(LetterId a) const { return letters_[static_cast<size_t>(a)]; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::optional<LetterId> find(std::string_view name) const;

    PeerId peer_of(Action act) const {
        const Letter& l = letter(act.letter);
        return act.send ? l.src : l.dst;
    }

    std::string action_token(Action act) const {  // "!a" / "?a"
        return (act.send ? "!" : "?") + letter(act.letter).name;
    }
    std::string display(LetterId a) const;  // "a@1>2" (peers rendered 1-based)

private:
    int peer_count_ = 0;
    std::vector<Letter> letters_;
};

struct Topology {
    int peer_count = 0;
    std::vector<std::pair<PeerId, PeerId>> edges;  // sorted, unique
};

Topology topology(const MessageSet& messages);
// true iff the edge set is exactly { (i, i+1 mod np) : i }.
bool is_oriented_ring(const Topology& topo);

struct PeerTransition {
    StateId from = 0;
    Action action;
    StateId to = 0;
    auto operator<=>(const PeerTransition&) const = default;
};

// One communicating machine. All states are accepting; there is no
// accepting-state field by construction.
struct Peer {
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<PeerTransition> transitions;
};

enum class SemanticsKind { P2pFifo, MailboxFifo, P2pBag };

std::string_view to_string(SemanticsKind kind);
std::optional<SemanticsKind> semantics_from_string(std::string_view text);

class System {
public:
    System() = default;
    System(MessageSet messages, std::vector<Peer> peers,
           std::string name = "system");  // throws ValidationError

    const std::string& name() const { return name_; }
    const MessageSet& messages() const { return messages_; }
    int peer_count() const { return static_cast<int>(peers_.size()); }
    const Peer& peer(PeerId i) const { return peers_[static_cast<size_t>(i)]; }
    const std::vector<Peer>& peers() const { return peers_; }

    std::span<const PeerTransition> transitions_from(PeerId peer, StateId state) const;
    // true iff `state` has no outgoing transition in peer `peer`.
    bool state_is_final(PeerId peer, StateId state) const {
        return transitions_from(peer, state).empty();
    }

private:
    std::string name_;
    MessageSet messages_;
    std::vector<Peer> peers_;
    std::vector<std::vector<std::vector<PeerTransition>>> by_state_;
};

// Buffer keying for one communication discipline: one slot per ordered peer
// pair for the peer-to-peer disciplines, one slot per receiver for mailboxes.
class ChannelTable {
public:
    ChannelTable() = default;
    ChannelTable(const MessageSet& messages, SemanticsKind kind);

    SemanticsKind kind() const { return kind_; }
    int slot_count() const { return slot_count_; }
    int slot_of(LetterId a) const { return slot_by_letter_[static_cast<size_t>(a)]; }
    std::string slot_name(int slot) const;  // "1>2" (p2p) or ">2" (mailbox)

private:
    SemanticsKind kind_ = SemanticsKind::P2pFifo;
    int peer_count_ = 0;
    int slot_count_ = 0;
    std::vector<int> slot_by_letter_;
};

// Per-peer control states plus per-slot buffer contents. FIFO contents are
// words; bag contents are multisets kept sorted so equality is canonical.
struct Configuration {
    std::vector<StateId> control;
    std::vector<std::vector<LetterId>> buffers;

    bool stable() const {
        for (const auto& b : buffers)
            if (!b.empty()) return false;
        return true;
    }
    std::size_t buffered_total() const {
        std::size_t n = 0;
        for (const auto& b : buffers) n += b.size();
        return n;
    }
    auto operator<=>(const Configuration&) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const;
};

Configuration initial_configuration(const System& system, SemanticsKind kind);

// Actions with a matching peer transition whose buffer condition holds
// (receives need the addressed content to permit them; sends are unbounded
// at this level). Sorted and unique.
std::vector<Action> enabled_actions(const System& system, SemanticsKind kind,
                                    const Configuration& config);

// All configurations reachable by one `action` step; empty when disabled.
// More than one element only for nondeterministic peers. Sorted.
std::vector<Configuration> successors(const System& system, SemanticsKind kind,
                                      const Configuration& config, Action action);

// The canonically least successor. Throws NotEnabledError when disabled.
Configuration step(const System& system, SemanticsKind kind, const Configuration& config,
                   Action action);

// Result of executing a trace from the initial configuration. Peer branches
// evolve independently, so the reachable configurations are exactly the
// product of the per-peer state sets with the (trace-determined) buffers.
struct RunResult {
    bool ok = false;
    std::size_t failed_index = 0;                    // meaningful when !ok
    std::vector<std::vector<StateId>> peer_states;   // per peer, sorted set
    std::vector<std::vector<LetterId>> buffers;      // per slot

    bool deterministic() const {
        for (const auto& s : peer_states)
            if (s.size() != 1) return false;
        return true;
    }
    // Unique final configuration; call only when deterministic().
    Configuration configuration() const;
    std::vector<Configuration> configurations() const;  // full product
};

RunResult run(const System& system, SemanticsKind kind, const Trace& trace);

// Whether the two runs can land in a common configuration.
bool runs_intersect(const RunResult& lhs, const RunResult& rhs);

}  // namespace syncheck

#endif
