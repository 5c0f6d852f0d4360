#ifndef SYNCHECK_DECIDE_HPP
#define SYNCHECK_DECIDE_HPP

#include <optional>
#include <vector>

#include "syncheck/explore.hpp"
#include "syncheck/lang.hpp"
#include "syncheck/model.hpp"
#include "syncheck/types.hpp"

namespace syncheck::decide {

struct Witness {
    std::vector<LetterId> send_word;
    std::optional<Configuration> stable_config;  // set for stable-pair violations
};

struct SyncVerdict {
    bool equal = false;
    std::optional<Witness> witness;  // present iff !equal; lies in I_k \ I_0
    std::size_t states = 0;          // of the k-bounded LTS
    std::size_t edges = 0;
    int k = 0;
    SemanticsKind semantics = SemanticsKind::P2pFifo;
};

// Compares the k-bounded observable against the rendezvous observable. Only
// the I_k <= I_0 direction is checked; the other holds by monotonicity. The
// witness is a shortest violating send word, preferring the send-language
// component over stable-pair components on ties.
SyncVerdict k_synchronizable(const System& system, SemanticsKind kind, int k,
                             bool language_only = false, const explore::Limits& limits = {});

// k_synchronizable at k=1 under p2p-fifo, which decides full synchronizability
// on oriented rings. Throws PreconditionError on other topologies.
SyncVerdict ring_synchronizable(const System& system, const explore::Limits& limits = {});

// True iff the trace is a synchronous prefix extended by sends only.
bool is_normalized(const Trace& trace);

// Rewrites an executable trace of a 1-synchronizable oriented-ring system into
// an equivalent normalized one (synchronous prefix, then sends only).
// Throws PreconditionError if the system is not an oriented ring or not
// 1-synchronizable, and Error if the trace is not executable.
Trace normalize_trace(const System& system, const Trace& trace,
                      const explore::Limits& limits = {});

// Same rewrite without the 1-synchronizability check; callers must have
// established it (the ring shape and executability are still verified).
Trace normalize_trace_unchecked(const System& system, const Trace& trace);

// The reachable configurations of a 1-synchronizable ring system: every
// configuration is reached from some synchronously reachable stable base by
// send-only moves, so membership reduces to per-peer path queries against the
// send-only transition automata.
struct RegularReachSet {
    System system;
    std::vector<Configuration> base;          // stable, synchronously reachable
    std::vector<lang::Nfa> peer_send;         // per peer: states = peer states, send edges only
    std::vector<int> ring_slot;               // per peer i: buffer slot of channel i -> i+1
};

RegularReachSet reach_representation(const System& system, const explore::Limits& limits = {});
bool reach_contains(const RegularReachSet& reach, const Configuration& config);

// A receive-only action sequence from the configuration to a stable one.
std::optional<Trace> receive_drain(const System& system, SemanticsKind kind,
                                   const Configuration& config);

// Branching bisimilarity of two send-LTSs (receives silent), by signature
// refinement. Not divergence-sensitive.
bool branching_bisimilar(const explore::BoundedLts& lhs, const explore::BoundedLts& rhs);

// True iff no trace ever buffers more than k messages in one slot, checked by
// exploring at bound k+1.
bool strongly_k_stable(const System& system, SemanticsKind kind, int k,
                       const explore::Limits& limits = {});

}  // namespace syncheck::decide

#endif
