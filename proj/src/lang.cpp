#include "syncheck/lang.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace syncheck::lang {

Nfa Nfa::empty_language(int alphabet) {
    Nfa n;
    n.states = 1;
    n.alphabet = alphabet;
    n.accepting = {0};
    return n;
}

Nfa Nfa::word_prefixes(int alphabet, std::span<const int> word) {
    Nfa n;
    n.alphabet = alphabet;
    n.states = static_cast<int>(word.size()) + 1;
    n.accepting.assign(static_cast<size_t>(n.states), 1);
    for (size_t i = 0; i < word.size(); ++i)
        n.add_edge(static_cast<int>(i), word[i], static_cast<int>(i) + 1);
    return n;
}

int Nfa::add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    return states++;
}

void Nfa::add_edge(int from, int symbol, int to) { edges.push_back({from, symbol, to}); }

bool Nfa::is_deterministic() const {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.symbol == kSilent) return false;
        if (!seen.insert({e.from, e.symbol}).second) return false;
    }
    return true;
}

namespace {

struct Adjacency {
    std::vector<std::vector<std::pair<int, int>>> out;  // state -> (symbol, to)
    explicit Adjacency(const Nfa& nfa) : out(static_cast<size_t>(nfa.states)) {
        for (const Nfa::Edge& e : nfa.edges)
            out[static_cast<size_t>(e.from)].emplace_back(e.symbol, e.to);
        for (auto& row : out) std::sort(row.begin(), row.end());
    }
};

std::vector<int> silent_closure(const Adjacency& adj, std::vector<int> states) {
    std::set<int> seen(states.begin(), states.end());
    std::deque<int> work(states.begin(), states.end());
    while (!work.empty()) {
        const int s = work.front();
        work.pop_front();
        for (auto [symbol, to] : adj.out[static_cast<size_t>(s)])
            if (symbol == Nfa::kSilent && seen.insert(to).second) work.push_back(to);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

bool accepts(const Nfa& nfa, std::span<const int> word) {
    Adjacency adj(nfa);
    std::vector<int> current = silent_closure(adj, {nfa.initial});
    for (int symbol : word) {
        std::set<int> next;
        for (int s : current)
            for (auto [sym, to] : adj.out[static_cast<size_t>(s)])
                if (sym == symbol) next.insert(to);
        current = silent_closure(adj, {next.begin(), next.end()});
        if (current.empty()) return false;
    }
    for (int s : current)
        if (nfa.accepting[static_cast<size_t>(s)]) return true;
    return false;
}

Nfa determinize(const Nfa& nfa) {
    Adjacency adj(nfa);
    Nfa out;
    out.alphabet = nfa.alphabet;

    std::map<std::vector<int>, int> index;
    std::deque<std::vector<int>> work;

    auto intern = [&](std::vector<int> subset) {
        auto it = index.find(subset);
        if (it != index.end()) return it->second;
        bool accept = false;
        for (int s : subset)
            if (nfa.accepting[static_cast<size_t>(s)]) accept = true;
        const int id = out.add_state(accept);
        index.emplace(subset, id);
        work.push_back(std::move(subset));
        return id;
    };

    out.initial = intern(silent_closure(adj, {nfa.initial}));
    while (!work.empty()) {
        std::vector<int> subset = work.front();
        work.pop_front();
        const int from = index.at(subset);
        for (int symbol = 0; symbol < nfa.alphabet; ++symbol) {
            std::set<int> next;
            for (int s : subset)
                for (auto [sym, to] : adj.out[static_cast<size_t>(s)])
                    if (sym == symbol) next.insert(to);
            if (next.empty()) continue;  // partial DFA: missing edge rejects
            const int to = intern(silent_closure(adj, {next.begin(), next.end()}));
            out.add_edge(from, symbol, to);
        }
    }
    return out;
}

namespace {

// Moore refinement on a (partial) DFA with an implicit rejecting sink.
Nfa minimize_dfa(const Nfa& dfa) {
    const int n = dfa.states;
    std::vector<std::vector<int>> next(static_cast<size_t>(n),
                                       std::vector<int>(static_cast<size_t>(dfa.alphabet), -1));
    for (const Nfa::Edge& e : dfa.edges)
        next[static_cast<size_t>(e.from)][static_cast<size_t>(e.symbol)] = e.to;

    std::vector<int> block(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) block[static_cast<size_t>(s)] = dfa.accepting[static_cast<size_t>(s)] ? 1 : 0;
    const int kSink = -1;

    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> refined(static_cast<size_t>(n));
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig;
            sig.push_back(block[static_cast<size_t>(s)]);
            for (int a = 0; a < dfa.alphabet; ++a) {
                const int t = next[static_cast<size_t>(s)][static_cast<size_t>(a)];
                sig.push_back(t < 0 ? kSink : block[static_cast<size_t>(t)]);
            }
            auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
            refined[static_cast<size_t>(s)] = it->second;
            (void)fresh;
        }
        if (refined == block) break;
        block = std::move(refined);
    }

    // Rebuild, renumbering blocks in breadth-first order from the initial one.
    std::map<int, int> renumber;
    std::deque<int> work;
    Nfa out;
    out.alphabet = dfa.alphabet;
    auto intern = [&](int b, bool accept) {
        auto it = renumber.find(b);
        if (it != renumber.end()) return it->second;
        const int id = out.add_state(accept);
        renumber.emplace(b, id);
        work.push_back(b);
        return id;
    };
    std::vector<int> representative(static_cast<size_t>(n), -1);
    for (int s = n - 1; s >= 0; --s) representative[static_cast<size_t>(block[static_cast<size_t>(s)])] = s;

    out.initial = intern(block[static_cast<size_t>(dfa.initial)],
                         dfa.accepting[static_cast<size_t>(dfa.initial)] != 0);
    while (!work.empty()) {
        const int b = work.front();
        work.pop_front();
        const int s = representative[static_cast<size_t>(b)];
        for (int a = 0; a < dfa.alphabet; ++a) {
            const int t = next[static_cast<size_t>(s)][static_cast<size_t>(a)];
            if (t < 0) continue;
            const int tb = block[static_cast<size_t>(t)];
            out.add_edge(renumber.at(b), a,
                         intern(tb, dfa.accepting[static_cast<size_t>(t)] != 0));
        }
    }
    return out;
}

}  // namespace

Nfa minimize(const Nfa& nfa) { return minimize_dfa(determinize(nfa)); }

std::optional<std::vector<int>> counterexample_word(const Nfa& lhs, const Nfa& rhs) {
    const Nfa da = determinize(lhs);
    const Nfa db = determinize(rhs);
    const int alphabet = std::max(da.alphabet, db.alphabet);
    const int kDead = -1;

    std::vector<std::vector<int>> na(static_cast<size_t>(da.states),
                                     std::vector<int>(static_cast<size_t>(alphabet), kDead));
    for (const Nfa::Edge& e : da.edges) na[static_cast<size_t>(e.from)][static_cast<size_t>(e.symbol)] = e.to;
    std::vector<std::vector<int>> nb(static_cast<size_t>(db.states),
                                     std::vector<int>(static_cast<size_t>(alphabet), kDead));
    for (const Nfa::Edge& e : db.edges) nb[static_cast<size_t>(e.from)][static_cast<size_t>(e.symbol)] = e.to;

    // BFS over the product with symbols tried in ascending order: the first
    //hit is the shortest counterexample, lexicographically least among ties.
    struct Node {
        int a, b;
        auto operator<=>(const Node&) const = default;
    };
    std::map<Node, std::pair<Node, int>> parent;
    std::deque<Node> work;
    const Node start{da.initial, db.initial};
    parent.emplace(start, std::make_pair(start, -1));
    work.push_back(start);

    auto bad = [&](Node n) {
        const bool in_a = n.a != kDead && da.accepting[static_cast<size_t>(n.a)];
        const bool in_b = n.b != kDead && db.accepting[static_cast<size_t>(n.b)];
        return in_a && !in_b;
    };

    while (!work.empty()) {
        const Node cur = work.front();
        work.pop_front();
        if (bad(cur)) {
            std::vector<int> word;
            Node n = cur;
            while (true) {
                auto [prev, symbol] = parent.at(n);
                if (symbol < 0) break;
                word.push_back(symbol);
                n = prev;
            }
            std::reverse(word.begin(), word.end());
            return word;
        }
        if (cur.a == kDead) continue;  // nothing in L(lhs) from here on
        for (int symbol = 0; symbol < alphabet; ++symbol) {
            const Node nxt{na[static_cast<size_t>(cur.a)][static_cast<size_t>(symbol)],
                           cur.b == kDead ? kDead
                                          : nb[static_cast<size_t>(cur.b)][static_cast<size_t>(symbol)]};
            if (nxt.a == kDead) continue;
            if (parent.emplace(nxt, std::make_pair(cur, symbol)).second) work.push_back(nxt);
        }
    }
    return std::nullopt;
}

bool language_subset(const Nfa& lhs, const Nfa& rhs) {
    return !counterexample_word(lhs, rhs).has_value();
}

bool language_equal(const Nfa& lhs, const Nfa& rhs) {
    return language_subset(lhs, rhs) && language_subset(rhs, lhs);
}

bool path_spells(const Nfa& nfa, int from, int to, std::span<const int> word) {
    Adjacency adj(nfa);
    std::vector<int> current = silent_closure(adj, {from});
    for (int symbol : word) {
        std::set<int> next;
        for (int s : current)
            for (auto [sym, t] : adj.out[static_cast<size_t>(s)])
                if (sym == symbol) next.insert(t);
        current = silent_closure(adj, {next.begin(), next.end()});
        if (current.empty()) return false;
    }
    return std::binary_search(current.begin(), current.end(), to);
}

}  // namespace syncheck::lang
