#ifndef SYNCHECK_PROPS_HPP
#define SYNCHECK_PROPS_HPP

#include <cstddef>
#include <string>

#include "syncheck/model.hpp"
#include "syncheck/reduce.hpp"

namespace syncheck::props {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::size_t cases = 0;  // how many instances were exercised
    std::string detail;     // first failure, or a short summary
};

// For distinct-source letters a, b, every shuffle of !a.?a with !b.?b projects
// on each peer to one of the two rendezvous orders. Pure trace-level check
// over all letter pairs of the message set.
CheckResult shuffle_projection_dichotomy(const MessageSet& messages);

// Diamond for single sends: after any synchronous trace (up to `depth`
// actions), two enabled sends from distinct sources admit all six shuffles of
// their rendezvous blocks, all leading to one configuration. Expects a
// 1-synchronizable system.
CheckResult send_send_diamond(const System& system, int depth);

// Same-source send bursts lift to rendezvous bursts.
CheckResult same_source_lifting(const System& system, int depth, int max_n);

// Diamond for send sequences (up to max_nm per side): all shuffles of the two
// rendezvous bursts are executable and pairwise equivalent.
CheckResult generalized_diamond(const System& system, int depth, int max_nm);

// Every bounded trace normalizes to an equivalent synchronous-prefix-plus-
// sends trace. Expects a 1-synchronizable oriented-ring system.
CheckResult normalization_roundtrip(const System& system, int bound, int max_len);

// Every configuration found at the given bound is in the regular reachability
// representation and drains to a stable configuration by receives only.
CheckResult reach_and_drain(const System& system, int bound);

// Bounded traces of the queue encoding are exactly the morphism images plus
// the blocked-order extensions.
CheckResult encoding_correspondence(const reduce::FifoAutomaton& automaton, int k,
                                    int max_len);

// Rendezvous traces of the always-receiving variant are exactly the images of
// the at-most-one-final-?special language.
CheckResult prime_sync_traces(const reduce::FifoAutomaton& automaton, LetterId special,
                              int max_len);

// The merged system is k-synchronizable exactly when the automaton has no
// bounded trace ending with ?special; the violating witness mentions the
// acknowledgement letter.
CheckResult merged_reception_equiv(const reduce::FifoAutomaton& automaton, LetterId special,
                                   int k, int depth);

// The merged system's observable is the union of the two components'.
CheckResult observable_union(const reduce::FifoAutomaton& automaton, LetterId special, int k);

// Rewriting bounded traces of the always-receiving variant into rendezvous
// form preserves equivalence and lands inside the synchronous prefixes.
CheckResult relay_rewrite(const reduce::FifoAutomaton& automaton, LetterId special,
                          int max_len);

}  // namespace syncheck::props

#endif
