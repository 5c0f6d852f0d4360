#ifndef SYNCHECK_BUILTINS_HPP
#define SYNCHECK_BUILTINS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syncheck/model.hpp"
#include "syncheck/reduce.hpp"

namespace syncheck::reduce {

// Registry of the named example systems and automata, each carrying the
// verdicts the acceptance suite holds them to.
struct BuiltinSystem {
    std::string name;
    std::string description;
    System system;
    std::vector<std::pair<int, bool>> expected_k_sync;  // (k, equal) under p2p-fifo
    bool ring = false;
    std::optional<bool> ring_equal;  // verdict of the ring decision, when ring
};

struct BuiltinFifo {
    std::string name;
    std::string description;
    FifoAutomaton automaton;
};

const std::vector<BuiltinSystem>& builtin_systems();
const BuiltinSystem& builtin_system(std::string_view name);  // throws Error

const std::vector<BuiltinFifo>& builtin_fifo_automata();
const BuiltinFifo& builtin_fifo(std::string_view name);  // throws Error

TilingInstance singleton_tiling();

// Reserved name for the known mailbox counterexample whose concrete machines
// are not publicly specified; the registry keeps the slot so lookups explain
// the gap instead of failing silently.
extern const char* const kMailboxPlaceholderName;
extern const char* const kMailboxPlaceholderNote;

}  // namespace syncheck::reduce

#endif
