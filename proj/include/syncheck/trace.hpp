#ifndef SYNCHECK_TRACE_HPP
#define SYNCHECK_TRACE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncheck/model.hpp"
#include "syncheck/types.hpp"

namespace syncheck::traces {

std::vector<LetterId> send_projection(const Trace& trace);
std::vector<LetterId> recv_projection(const Trace& trace);

// Subsequence of the actions performed by one peer.
Trace peer_projection(const MessageSet& messages, const Trace& trace, PeerId peer);

// Subsequence of the actions on letters of channel from->to.
Trace channel_projection(const MessageSet& messages, const Trace& trace, PeerId from,
                         PeerId to);

// The word w with send(trace|from->to) = recv(trace|from->to) . w, or nullopt
// when the receives are not a prefix of the sends. Definedness of this word on
// every prefix is exactly the FIFO criterion, so "undefined" is a value here,
// not an error.
std::optional<std::vector<LetterId>> buffer_after(const MessageSet& messages,
                                                  const Trace& trace, PeerId from, PeerId to);

bool is_fifo(const MessageSet& messages, const Trace& trace);
// FIFO and no channel buffer ever exceeds k messages.
bool is_k_bounded(const MessageSet& messages, const Trace& trace, int k);
// Of the form !?a1 . !?a2 ... !?an.
bool is_synchronous(const Trace& trace);
// A synchronous trace possibly followed by one bare trailing send, i.e. a
// prefix of some synchronous trace.
bool is_synchronous_prefix(const Trace& trace);
bool is_stable(const MessageSet& messages, const Trace& trace);

// Both FIFO and equal per-peer projections for every peer.
bool causally_equivalent(const MessageSet& messages, const Trace& lhs, const Trace& rhs);

// Both executable and able to land in a common configuration.
bool system_equivalent(const System& system, SemanticsKind kind, const Trace& lhs,
                       const Trace& rhs);

// !?a1 ... !?an where a1...an is the send projection of the input.
Trace sync_trace_of(const Trace& trace);

// All interleavings preserving the internal order of each argument (as a set).
std::vector<Trace> shuffles(const Trace& lhs, const Trace& rhs);

// A causally equivalent k-bounded trace, or nullopt when none exists. Searches
// the interleavings of the per-peer projections, pruning non-FIFO orders and
// buffers above k; worst case is exponential but fine at desk scale.
// The input must be FIFO.
std::optional<Trace> exists_equiv_k_bounded(const MessageSet& messages, const Trace& trace,
                                            int k);

// Text syntax shared with the CLI: whitespace-separated "!a" / "?a" tokens.
std::string to_tokens(const MessageSet& messages, const Trace& trace);
Trace parse_tokens(const MessageSet& messages, std::string_view text);  // throws ParseError

}  // namespace syncheck::traces

#endif
