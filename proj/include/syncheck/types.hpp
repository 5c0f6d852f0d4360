#ifndef SYNCHECK_TYPES_HPP
#define SYNCHECK_TYPES_HPP

#include <compare>
#include <cstdint>
#include <vector>

namespace syncheck {

using PeerId = int;    // 0-based internally; rendered 1-based in text formats
using LetterId = int;  // index into a MessageSet (or a FIFO-automaton alphabet)
using StateId = int;   // index into a peer's state table

// A send (!a) or receive (?a) of one letter.
struct Action {
    bool send = true;
    LetterId letter = 0;
    auto operator<=>(const Action&) const = default;
};

inline Action snd(LetterId a) { return Action{true, a}; }
inline Action rcv(LetterId a) { return Action{false, a}; }

// A finite action sequence. Properties like FIFO-ness or boundedness are
// predicates over traces, not representation invariants.
using Trace = std::vector<Action>;

inline Trace& operator+=(Trace& lhs, const Trace& rhs) {
    lhs.insert(lhs.end(), rhs.begin(), rhs.end());
    return lhs;
}

inline Trace operator+(Trace lhs, const Trace& rhs) {
    lhs += rhs;
    return lhs;
}

// !a immediately followed by ?a.
inline Trace rendezvous(LetterId a) { return Trace{snd(a), rcv(a)}; }

}  // namespace syncheck

#endif
