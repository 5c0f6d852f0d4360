#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "syncheck/lang.hpp"

using namespace syncheck::lang;

namespace {

Nfa random_nfa(std::mt19937_64& rng, int max_states, int alphabet) {
    std::uniform_int_distribution<int> nstates(1, max_states);
    std::uniform_int_distribution<int> coin(0, 3);
    Nfa nfa;
    nfa.alphabet = alphabet;
    nfa.states = nstates(rng);
    nfa.accepting.resize(static_cast<size_t>(nfa.states));
    std::uniform_int_distribution<int> state(0, nfa.states - 1);
    for (int s = 0; s < nfa.states; ++s) {
        nfa.accepting[static_cast<size_t>(s)] = coin(rng) != 0;  // mostly accepting
        for (int a = 0; a < alphabet; ++a) {
            if (coin(rng) < 2) nfa.add_edge(s, a, state(rng));
            if (coin(rng) == 0) nfa.add_edge(s, a, state(rng));
        }
        if (coin(rng) == 0) nfa.add_edge(s, Nfa::kSilent, state(rng));
    }
    return nfa;
}

// Enumerates every word up to max_len and compares direct NFA simulation.
bool equal_by_enumeration(const Nfa& a, const Nfa& b, int max_len) {
    const int alphabet = std::max(a.alphabet, b.alphabet);
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            if (accepts(a, w) != accepts(b, w)) return false;
            if (len == max_len) continue;
            for (int s = 0; s < alphabet; ++s) {
                auto copy = w;
                copy.push_back(s);
                next.push_back(std::move(copy));
            }
        }
        frontier = std::move(next);
    }
    return true;
}

bool structurally_equal(const Nfa& a, const Nfa& b) {
    auto edges_a = a.edges;
    auto edges_b = b.edges;
    std::sort(edges_a.begin(), edges_a.end());
    std::sort(edges_b.begin(), edges_b.end());
    return a.states == b.states && a.initial == b.initial && a.accepting == b.accepting &&
           edges_a == edges_b;
}

}  // namespace

TEST_CASE("determinize a prefix-closed chain") {
    const std::vector<int> aabc{0, 0, 1, 2};
    const Nfa chain = Nfa::word_prefixes(3, aabc);
    const Nfa det = determinize(chain);
    CHECK(det.is_deterministic());
    CHECK(det.states == 5);
    CHECK(language_equal(chain, det));
    for (char acc : det.accepting) CHECK(acc == 1);  // prefix closure preserved
}

TEST_CASE("determinize the empty language") {
    const Nfa det = determinize(Nfa::empty_language(2));
    CHECK(det.states == 1);
    CHECK_FALSE(det.accepting[0]);
    CHECK(det.edges.empty());
}

TEST_CASE("determinize is idempotent up to state numbering") {
    std::mt19937_64 rng(20230817);
    for (int i = 0; i < 500; ++i) {
        const Nfa nfa = random_nfa(rng, 5, 2);
        const Nfa once = determinize(nfa);
        const Nfa twice = determinize(once);
        CHECK(structurally_equal(once, twice));
        CHECK(language_equal(nfa, once));
    }
}

TEST_CASE("subset, equality and counterexamples on the worked languages") {
    const std::vector<int> aabc{0, 0, 1, 2};
    const std::vector<int> aabcd{0, 0, 1, 2, 3};
    const Nfa small = Nfa::word_prefixes(4, aabc);
    const Nfa large = Nfa::word_prefixes(4, aabcd);
    CHECK(language_subset(small, large));
    CHECK_FALSE(language_equal(small, large));
    CHECK(counterexample_word(large, small) == aabcd);
    CHECK_FALSE(counterexample_word(small, large).has_value());
    CHECK(language_equal(small, small));
}

TEST_CASE("counterexample is absent exactly when the inclusion holds") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 300; ++i) {
        const Nfa a = random_nfa(rng, 4, 2);
        const Nfa b = random_nfa(rng, 4, 2);
        const auto cex = counterexample_word(a, b);
        CHECK(cex.has_value() != language_subset(a, b));
        if (cex) {
            CHECK(accepts(a, *cex));
            CHECK_FALSE(accepts(b, *cex));
        }
    }
}

TEST_CASE("equality agrees with brute-force enumeration") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 500; ++i) {
        const Nfa a = random_nfa(rng, 4, 2);
        // Bias half of the pairs toward equality by permuting edge order.
        Nfa b;
        if (i % 2 == 0) {
            b = a;
            std::shuffle(b.edges.begin(), b.edges.end(), rng);
        } else {
            b = random_nfa(rng, 4, 2);
        }
        CHECK(language_equal(a, b) == equal_by_enumeration(a, b, a.states + b.states));
    }
}

TEST_CASE("minimize is canonical and language-preserving") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 200; ++i) {
        const Nfa nfa = random_nfa(rng, 5, 2);
        const Nfa mini = minimize(nfa);
        CHECK(mini.is_deterministic());
        CHECK(language_equal(nfa, mini));
        CHECK(mini.states <= determinize(nfa).states);
        CHECK(structurally_equal(mini, minimize(mini)));
    }
}

TEST_CASE("prefix-closed languages stay prefix-closed through the constructions") {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 100; ++i) {
        Nfa nfa = random_nfa(rng, 5, 2);
        nfa.accepting.assign(nfa.accepting.size(), 1);  // all states accept
        for (const Nfa& derived : {determinize(nfa), minimize(nfa)})
            for (char acc : derived.accepting) CHECK(acc == 1);
    }
}

TEST_CASE("path_spells") {
    // 0 -a-> 1 -b-> 2 with a silent shortcut 0 -> 1.
    Nfa nfa;
    nfa.alphabet = 2;
    nfa.states = 3;
    nfa.accepting = {1, 1, 1};
    nfa.add_edge(0, 0, 1);
    nfa.add_edge(0, Nfa::kSilent, 1);
    nfa.add_edge(1, 1, 2);
    const std::vector<int> ab{0, 1};
    const std::vector<int> b{1};
    CHECK(path_spells(nfa, 0, 2, ab));
    CHECK(path_spells(nfa, 0, 2, b));
    CHECK(path_spells(nfa, 0, 1, std::vector<int>{}));
    CHECK_FALSE(path_spells(nfa, 0, 2, std::vector<int>{0}));
}
