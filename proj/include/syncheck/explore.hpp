#ifndef SYNCHECK_EXPLORE_HPP
#define SYNCHECK_EXPLORE_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "syncheck/lang.hpp"
#include "syncheck/model.hpp"
#include "syncheck/types.hpp"

namespace syncheck::explore {

struct Limits {
    std::size_t max_states = 1'000'000;  // overflow throws StateLimitError
};

// Bound 0 means rendezvous: every send edge is fused with its receive into one
// Sync macro-step, so synchronous behaviour lives in the same LTS abstraction.
enum class EdgeKind { Send, Recv, Sync };

struct Edge {
    int from = 0;
    EdgeKind kind = EdgeKind::Send;
    LetterId letter = 0;
    int to = 0;
    auto operator<=>(const Edge&) const = default;
};

// Complete reachable configuration graph under a buffer bound. States are
// sorted canonically (controls, then buffers) so output is deterministic.
struct BoundedLts {
    System system;
    SemanticsKind semantics = SemanticsKind::P2pFifo;
    int bound = 0;
    bool send_view = false;  // set by send_lts: receive edges read as silent

    std::vector<Configuration> states;
    int initial = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out;  // state -> indices into edges

    std::optional<int> state_index(const Configuration& config) const;
};

BoundedLts build_lts(const System& system, SemanticsKind kind, int bound,
                     const Limits& limits = {});

// Identical graph with receive edges carrying the silent label.
BoundedLts send_lts(const System& system, SemanticsKind kind, int bound,
                    const Limits& limits = {});

// Send language plus, per stable configuration, the send words of the traces
// ending there. Symbols of every automaton are the letter ids; receives are
// silent; all states of the send language accept (prefix closure).
struct Observable {
    lang::Nfa send_language;
    std::map<Configuration, lang::Nfa> stable_map;
};

Observable observables(const BoundedLts& lts);

// States with no outgoing edge, split by why they stopped: some peer is still
// waiting (deadlocked), every peer is done and the buffers are empty
// (terminal), or every peer is done but messages are left over
// (terminal_orphan).
struct DeadlockReport {
    std::vector<int> deadlocked;
    std::vector<int> terminal;
    std::vector<int> terminal_orphan;
};

DeadlockReport deadlocks(const BoundedLts& lts);

// For every state, search receive-only paths to a stable state; lists the
// states with no such path together with their leftover buffer contents.
struct DrainReport {
    struct Stuck {
        int state = 0;
        std::string buffers;  // formatted nonempty slots
    };
    bool all_drainable = true;
    std::vector<Stuck> stuck;
};

DrainReport drainable_to_stable(const BoundedLts& lts);

// All traces labeling a path from the initial state, up to a length in
// actions; Sync edges expand to !a.?a. Sorted and unique.
std::vector<Trace> enumerate_traces(const BoundedLts& lts, int max_actions);

// Whether the trace labels a path from the initial state. For a rendezvous
// LTS the trace must be synchronous.
bool accepts_trace(const BoundedLts& lts, const Trace& trace);

void write_dot(std::ostream& out, const BoundedLts& lts);

std::string format_configuration(const BoundedLts& lts, int state);
std::string format_configuration(const System& system, SemanticsKind kind,
                                 const Configuration& config);

}  // namespace syncheck::explore

#endif
