#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "raagw/graph.hpp"

namespace raagw {

using Word = std::vector<Letter>;

// Letters commute when their vertices coincide or are joined by an edge.
inline bool letters_commute(const SimplicialGraph& g, Letter a, Letter b) {
    return a.vertex() == b.vertex() || g.adjacent(a.vertex(), b.vertex());
}

inline Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Fully reduced form: no cancelling pair is reachable by swapping adjacent
// commuting letters.  Standard stack scan: a new letter cancels the nearest
// inverse it can be shuffled next to.
inline Word reduce(const SimplicialGraph& g, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
        int cancel = -1;
        for (int j = static_cast<int>(out.size()) - 1; j >= 0; --j) {
            if (out[j] == x.inverse()) {
                cancel = j;
                break;
            }
            if (!letters_commute(g, out[j], x)) break;
        }
        if (cancel >= 0)
            out.erase(out.begin() + cancel);
        else
            out.push_back(x);
    }
    return out;
}

// Positions whose letter can be shuffled to the front: everything before it
// must commute with it.
inline std::vector<int> front_movable(const SimplicialGraph& g, const Word& w) {
    std::vector<int> out;
    std::uint32_t prev = 0;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        int v = w[i].vertex();
        if ((prev & ~g.star_mask(v)) == 0) out.push_back(i);
        prev |= std::uint32_t(1) << v;
    }
    return out;
}

// Canonical normal form: fully reduce, then greedily pull the least
// front-movable letter, giving the lexicographically least shuffle
// representative.  Equality of elements becomes plain sequence equality.
inline Word normalize(const SimplicialGraph& g, const Word& w) {
    Word rem = reduce(g, w);
    Word out;
    out.reserve(rem.size());
    while (!rem.empty()) {
        std::uint32_t prev = 0;
        int best = -1;
        for (int i = 0; i < static_cast<int>(rem.size()); ++i) {
            int v = rem[i].vertex();
            if ((prev & ~g.star_mask(v)) == 0 && (best < 0 || rem[i] < rem[best])) best = i;
            prev |= std::uint32_t(1) << v;
        }
        out.push_back(rem[best]);
        rem.erase(rem.begin() + best);
    }
    return out;
}

inline bool equal(const SimplicialGraph& g, const Word& w1, const Word& w2) {
    return normalize(g, w1) == normalize(g, w2);
}

namespace detail {

inline std::string word_key(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter x : w) s.push_back(static_cast<char>(x.id));
    return s;
}

// Rotate the movable letter at position i to the back, then normalize.
inline Word rotate_out(const SimplicialGraph& g, const Word& w, int i) {
    Word next;
    next.reserve(w.size());
    for (int k = 0; k < static_cast<int>(w.size()); ++k)
        if (k != i) next.push_back(w[k]);
    next.push_back(w[i]);
    return normalize(g, next);
}

} // namespace detail

// Shortest representative of the conjugacy class, up to rotation: rotate
// any front-movable letter to the back while that shortens the word.
inline Word cyclically_reduce(const SimplicialGraph& g, const Word& w) {
    Word cur = normalize(g, w);
    bool shrunk = true;
    while (shrunk && cur.size() > 1) {
        shrunk = false;
        for (int i : front_movable(g, cur)) {
            Word cand = detail::rotate_out(g, cur, i);
            if (cand.size() < cur.size()) {
                cur = std::move(cand);
                shrunk = true;
                break;
            }
        }
    }
    return cur;
}

inline constexpr int kDefaultCyclicGuard = 12;

// All normal forms reachable from a cyclically reduced word by one-letter
// rotations; this is the whole set of cyclically reduced conjugates.
inline std::vector<Word> cyclic_closure(const SimplicialGraph& g, const Word& cyc,
                                        int guard = kDefaultCyclicGuard) {
    if (static_cast<int>(cyc.size()) > guard)
        throw BudgetError("cyclic word of length " + std::to_string(cyc.size()) +
                          " exceeds the conjugacy closure guard (" + std::to_string(guard) + ")");
    std::vector<Word> queue{cyc};
    std::unordered_set<std::string> seen{detail::word_key(cyc)};
    for (std::size_t h = 0; h < queue.size(); ++h) {
        Word cur = queue[h];
        for (int i : front_movable(g, cur)) {
            Word nxt = detail::rotate_out(g, cur, i);
            if (nxt.size() != cur.size())
                throw Error("rotation shortened a cyclically reduced word");
            auto key = detail::word_key(nxt);
            if (seen.insert(key).second) queue.push_back(std::move(nxt));
        }
        if (seen.size() > 2'000'000) throw BudgetError("conjugacy closure exploded");
    }
    return queue;
}

inline bool is_conjugate(const SimplicialGraph& g, const Word& w1, const Word& w2,
                         int guard = kDefaultCyclicGuard) {
    Word c1 = cyclically_reduce(g, w1);
    Word c2 = cyclically_reduce(g, w2);
    if (c1.size() != c2.size()) return false;
    if (c1.empty()) return true;
    if (c1 == c2) return true;
    auto closure = cyclic_closure(g, c1, guard);
    auto key = detail::word_key(c2);
    for (auto& s : closure)
        if (detail::word_key(s) == key) return true;
    return false;
}

// Least element of the rotation+shuffle closure of the cyclic reduction;
// two words are conjugate exactly when these agree.
inline Word cyclic_normal_form(const SimplicialGraph& g, const Word& w,
                               int guard = kDefaultCyclicGuard) {
    Word cyc = cyclically_reduce(g, w);
    if (cyc.empty()) return cyc;
    auto closure = cyclic_closure(g, cyc, guard);
    return *std::min_element(closure.begin(), closure.end(),
                             [](const Word& a, const Word& b) {
                                 return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                             });
}

// Word text: whitespace-separated tokens, `name` or `name^-1`.
inline Word parse_word(const SimplicialGraph& g, const std::string& text) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        bool neg = false;
        auto caret = tok.find('^');
        std::string base = tok;
        if (caret != std::string::npos) {
            std::string exp = tok.substr(caret + 1);
            if (exp != "-1") throw ParseError("bad letter token '" + tok + "' (only ^-1 is allowed)");
            neg = true;
            base = tok.substr(0, caret);
        }
        auto idx = g.try_vertex_index(base);
        if (!idx) throw ParseError("unknown vertex '" + base + "' in word");
        out.push_back(Letter::make(*idx, neg ? -1 : +1));
    }
    return out;
}

inline std::string word_to_string(const SimplicialGraph& g, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += g.letter_name(w[i]);
    }
    return s.empty() ? "1" : s;
}

} // namespace raagw
