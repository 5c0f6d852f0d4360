#ifndef SYNCHECK_LANG_HPP
#define SYNCHECK_LANG_HPP

#include <optional>
#include <span>
#include <vector>

namespace syncheck::lang {

// Finite automaton over integer symbols, with silent transitions (symbol -1).
// Carrier for send-trace languages and generated-system languages; symbol
// meaning is the caller's business.
struct Nfa {
    static constexpr int kSilent = -1;

    struct Edge {
        int from = 0;
        int symbol = kSilent;
        int to = 0;
        auto operator<=>(const Edge&) const = default;
    };

    int states = 0;
    int initial = 0;
    int alphabet = 0;
    std::vector<char> accepting;  // size == states
    std::vector<Edge> edges;

    static Nfa empty_language(int alphabet);
    // Chain automaton for the prefix closure of one word (all states accepting).
    static Nfa word_prefixes(int alphabet, std::span<const int> word);

    int add_state(bool accept);
    void add_edge(int from, int symbol, int to);
    bool is_deterministic() const;  // silent-free, at most one edge per (state, symbol)
};

// Direct simulation (with silent closure); independent of the subset
// construction below, so it can serve as an enumeration oracle.
bool accepts(const Nfa& nfa, std::span<const int> word);

// Language-preserving; output is deterministic, silent-free, and numbered in
// breadth-first order (so equal inputs give structurally equal outputs).
Nfa determinize(const Nfa& nfa);

// Canonical minimal deterministic automaton for the same language.
Nfa minimize(const Nfa& nfa);

bool language_subset(const Nfa& lhs, const Nfa& rhs);
bool language_equal(const Nfa& lhs, const Nfa& rhs);

// Shortest word in L(lhs) \ L(rhs), lexicographically least among ties;
// nullopt iff the inclusion holds.
std::optional<std::vector<int>> counterexample_word(const Nfa& lhs, const Nfa& rhs);

// True iff some path from `from` to `to` spells exactly `word` (silent edges
// allowed along the way).
bool path_spells(const Nfa& nfa, int from, int to, std::span<const int> word);

}  // namespace syncheck::lang

#endif
