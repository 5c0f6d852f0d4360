#ifndef SYNCHECK_REDUCE_HPP
#define SYNCHECK_REDUCE_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syncheck/lang.hpp"
#include "syncheck/model.hpp"
#include "syncheck/types.hpp"

namespace syncheck::reduce {

// Finite tiling instance: tiles with horizontal/vertical compatibility, an
// initial and a final tile, and a padding tile compatible to the right of and
// below every tile.
struct TilingInstance {
    std::string name = "tiling";
    std::vector<std::string> tiles;
    int initial_tile = 0;
    int final_tile = 0;
    int blank = 0;
    std::set<std::pair<int, int>> horizontal;
    std::set<std::pair<int, int>> vertical;

    void validate() const;  // throws ValidationError
};

// A single machine enqueueing and dequeueing letters on one FIFO queue.
struct FifoAutomaton {
    std::string name = "fifo";
    std::vector<std::string> alphabet;
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<PeerTransition> transitions;  // Action.letter indexes `alphabet`

    std::optional<LetterId> find_letter(std::string_view name) const;
    std::vector<PeerTransition> from(StateId state) const;
    void validate() const;  // throws ValidationError
};

struct FifoConfig {
    StateId state = 0;
    std::vector<LetterId> queue;
    bool stable() const { return queue.empty(); }
    auto operator<=>(const FifoConfig&) const = default;
};

// Encodes row-by-row tiling construction: emit the first row into the queue,
// then emit each next row while dequeueing the previous one to check vertical
// compatibility, with a cut letter separating rows.
FifoAutomaton tiling_to_fifo(const TilingInstance& instance);

extern const char* const kCutLetterName;

// R2 (no receive from the initial state) is syntactic and decided exactly.
// R1 (no stable configuration reachable by a nonempty trace) is semantic over
// an unbounded space, so it is only refuted or vindicated up to the given
// queue bound and trace depth.
struct R1R2Report {
    bool r2_holds = false;
    std::optional<Trace> r1_violation;
    int bound = 0;
    int depth = 0;
};

R1R2Report check_r1_r2(const FifoAutomaton& automaton, int bound, int depth);

// Bounded trace enumeration with the configurations each trace can end in.
struct FifoRun {
    Trace trace;
    std::vector<FifoConfig> finals;
};
std::vector<FifoRun> fifo_traces(const FifoAutomaton& automaton, int bound, int max_len);

// Shortest bounded trace whose last action is ?letter, if one exists within
// the given bounds.
std::optional<Trace> find_trace_with_receive(const FifoAutomaton& automaton, LetterId letter,
                                             int bound, int depth);

// The three-peer message set of the reduction: every base letter can travel
// 1>2, 1>3, 3>1, 3>2 and 2>3. Letters are named base_12, base_13, ...
enum class Direction { P1toP2 = 0, P1toP3, P3toP1, P3toP2, P2toP3 };

class Encoding {
public:
    explicit Encoding(const FifoAutomaton& automaton);
    const MessageSet& messages() const { return messages_; }
    LetterId letter(LetterId base, Direction dir) const {
        return base * 5 + static_cast<int>(dir);
    }
    LetterId base_of(LetterId encoded) const { return encoded / 5; }
    Direction direction_of(LetterId encoded) const {
        return static_cast<Direction>(encoded % 5);
    }

private:
    MessageSet messages_;
};

// Peer 1 mimics the automaton's decisions with channel 1->2 as the queue;
// peer 2 executes dequeue orders and acknowledges; peer 3 relays.
System fifo_to_system(const FifoAutomaton& automaton);

// Peer 2 replaced by the always-receiving variant that acknowledges orders
// without dequeueing and sinks on the special letter's order.
System fifo_to_system_prime(const FifoAutomaton& automaton, LetterId special);

// Both peer-2 behaviours glued at the initial state.
System fifo_to_system_merged(const FifoAutomaton& automaton, LetterId special);

// Letter-wise images of automaton traces inside the generated systems.
Trace morphism_h(const FifoAutomaton& automaton, const Trace& fifo_trace);
Trace morphism_h_prime(const FifoAutomaton& automaton, LetterId special,
                       const Trace& fifo_trace);
// Rewrites a generated-system trace: sends on 1->2 become rendezvous, their
// receives disappear, everything else is kept.
Trace morphism_h_doubleprime(const FifoAutomaton& automaton, const Trace& system_trace);

// Symbol encoding for automata over FIFO-automaton actions.
inline int action_symbol(Action act) { return 2 * act.letter + (act.send ? 0 : 1); }

// Traces of the automaton read as a plain finite automaton in which ?special
// occurs at most once and only as the last action.
lang::Nfa lm_language(const FifoAutomaton& automaton, LetterId special);

}  // namespace syncheck::reduce

#endif
