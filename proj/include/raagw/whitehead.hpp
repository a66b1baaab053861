#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "raagw/partitions.hpp"

namespace raagw {

// phi(P, m): the partition together with a multiplier chosen among its
// bases.  P is always the side containing the multiplier.
struct WhiteheadAuto {
    GWPartition partition;
    Letter multiplier;

    friend bool operator==(const WhiteheadAuto& a, const WhiteheadAuto& b) {
        return a.partition == b.partition && a.multiplier == b.multiplier;
    }
};

inline WhiteheadAuto make_whitehead(const SimplicialGraph&, const GWPartition& p, Letter m) {
    if (!p.bases.contains(m)) throw Error("multiplier is not a base of the partition");
    return {p, m};
}

// Four-case image formula, with P the side containing the multiplier m:
//   v -> v m^-1   if v in P, v^-1 in P*
//   v -> m v      if v^-1 in P, v in P*
//   v -> m v m^-1 if v, v^-1 in P
//   v -> v        otherwise (including v = m^+-)
inline Word image_of_generator(const SimplicialGraph&, const WhiteheadAuto& aut, int v) {
    Letter m = aut.multiplier;
    Letter x = Letter::positive(v);
    if (v == m.vertex()) return {x};
    LetterSet P = aut.partition.side_containing(m);
    LetterSet Pstar = aut.partition.side_opposite(m);
    bool in_p = P.contains(x), inv_in_p = P.contains(x.inverse());
    bool in_q = Pstar.contains(x), inv_in_q = Pstar.contains(x.inverse());
    if (in_p && inv_in_q) return {x, m.inverse()};
    if (inv_in_p && in_q) return {m, x};
    if (in_p && inv_in_p) return {m, x, m.inverse()};
    return {x};
}

// Automorphism (or endomorphism) given by generator images.
struct GeneratorMap {
    std::vector<Word> images;

    friend bool operator==(const GeneratorMap& a, const GeneratorMap& b) { return a.images == b.images; }
};

inline GeneratorMap identity_map(const SimplicialGraph& g) {
    GeneratorMap f;
    for (int v = 0; v < g.vertex_count(); ++v) f.images.push_back({Letter::positive(v)});
    return f;
}

inline bool is_identity(const SimplicialGraph& g, const GeneratorMap& f) {
    return f == identity_map(g);
}

inline constexpr int kDefaultWordCeiling = 64;

inline Word apply_map(const SimplicialGraph& g, const GeneratorMap& f, const Word& w,
                      int ceiling = kDefaultWordCeiling) {
    Word out;
    for (Letter x : w) {
        const Word& img = f.images[x.vertex()];
        if (x.is_negative()) {
            for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(it->inverse());
        } else {
            out.insert(out.end(), img.begin(), img.end());
        }
    }
    out = normalize(g, out);
    if (static_cast<int>(out.size()) > ceiling)
        throw BudgetError("word grew past the composition ceiling (" + std::to_string(ceiling) + ")");
    return out;
}

// f1 after f2, images normalized eagerly.
inline GeneratorMap compose(const SimplicialGraph& g, const GeneratorMap& f1, const GeneratorMap& f2,
                            int ceiling = kDefaultWordCeiling) {
    GeneratorMap out;
    out.images.reserve(f2.images.size());
    for (const Word& w : f2.images) out.images.push_back(apply_map(g, f1, w, ceiling));
    return out;
}

inline GeneratorMap to_generator_map(const SimplicialGraph& g, const WhiteheadAuto& aut) {
    GeneratorMap f;
    for (int v = 0; v < g.vertex_count(); ++v) f.images.push_back(image_of_generator(g, aut, v));
    return f;
}

// phi(P,m)^-1 = phi(P \ {m} u {m^-1}, m^-1).
inline WhiteheadAuto invert(const SimplicialGraph& g, const WhiteheadAuto& aut) {
    Letter m = aut.multiplier;
    LetterSet P = aut.partition.side_containing(m);
    LetterSet Q = aut.partition.side_opposite(m);
    LetterSet newP = P.minus(LetterSet::single(m));
    newP.insert(m.inverse());
    LetterSet newQ = Q.minus(LetterSet::single(m.inverse()));
    newQ.insert(m);
    GWPartition part = detail::finish_partition(g, newP, newQ, aut.partition.link);
    return {part, m.inverse()};
}

inline GeneratorMap conjugation_by(const SimplicialGraph& g, const Word& w) {
    GeneratorMap f;
    Word winv = inverse_word(w);
    for (int v = 0; v < g.vertex_count(); ++v) {
        Word img = winv;
        img.push_back(Letter::positive(v));
        img.insert(img.end(), w.begin(), w.end());
        f.images.push_back(normalize(g, img));
    }
    return f;
}

// Exponent-sum matrix of the induced map on Z^n; row = generator, entry =
// signed count of each vertex in its image.
inline std::vector<std::vector<int>> abelianization(const SimplicialGraph& g, const GeneratorMap& f) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> mat(n, std::vector<int>(n, 0));
    for (int v = 0; v < n; ++v)
        for (Letter x : f.images[v]) mat[v][x.vertex()] += x.is_negative() ? -1 : 1;
    return mat;
}

inline bool abelianization_is_identity(const SimplicialGraph& g, const GeneratorMap& f) {
    auto mat = abelianization(g, f);
    for (std::size_t i = 0; i < mat.size(); ++i)
        for (std::size_t j = 0; j < mat.size(); ++j)
            if (mat[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

enum class InnerVerdict { yes, no, unknown };

struct InnerResult {
    InnerVerdict verdict = InnerVerdict::unknown;
    Word conjugator;    // valid when verdict == yes
    std::string reason; // certificate description when verdict == no
};

namespace detail {

inline bool conjugates_all(const SimplicialGraph& g, const GeneratorMap& f, const Word& w) {
    Word winv = inverse_word(w);
    for (int v = 0; v < g.vertex_count(); ++v) {
        Word conj = winv;
        conj.push_back(Letter::positive(v));
        conj.insert(conj.end(), w.begin(), w.end());
        if (normalize(g, conj) != f.images[v]) return false;
    }
    return true;
}

// Depth-first enumeration of normal-form words of exactly the given length
// (the language of normal forms is prefix-closed), testing each candidate.
inline bool conjugator_dfs(const SimplicialGraph& g, const GeneratorMap& f, Word& w,
                           int remaining, Word& found) {
    if (remaining == 0) {
        if (conjugates_all(g, f, w)) {
            found = w;
            return true;
        }
        return false;
    }
    for (int id = 0; id < g.letter_count(); ++id) {
        w.push_back(Letter(static_cast<std::uint8_t>(id)));
        if (normalize(g, w) == w && conjugator_dfs(g, f, w, remaining - 1, found)) return true;
        w.pop_back();
    }
    return false;
}

} // namespace detail

// Decides whether f is an inner automorphism.  Exact NO certificates come
// first: a non-identity abelianization, a generator image not conjugate to
// the generator, or a two-letter word whose image leaves its conjugacy
// class.  Then a bounded search over normal-form conjugators; exhaustion
// yields `unknown`.
inline InnerResult is_inner(const SimplicialGraph& g, const GeneratorMap& f, int bound) {
    if (is_identity(g, f)) return {InnerVerdict::yes, {}, ""};
    if (!abelianization_is_identity(g, f))
        return {InnerVerdict::no, {}, "abelianization is not the identity"};
    for (int v = 0; v < g.vertex_count(); ++v) {
        Word gen{Letter::positive(v)};
        if (!is_conjugate(g, f.images[v], gen))
            return {InnerVerdict::no, {}, "image of " + g.names[v] + " is not conjugate to it"};
    }
    for (int a = 0; a < g.letter_count(); ++a) {
        for (int b = 0; b < g.letter_count(); ++b) {
            if (a == b || (a ^ 1) == b) continue;
            Word pair{Letter(static_cast<std::uint8_t>(a)), Letter(static_cast<std::uint8_t>(b))};
            if (!is_conjugate(g, apply_map(g, f, pair), pair))
                return {InnerVerdict::no, {},
                        "image of " + word_to_string(g, pair) + " leaves its conjugacy class"};
        }
    }
    for (int len = 0; len <= bound; ++len) {
        Word w, found;
        if (detail::conjugator_dfs(g, f, w, len, found)) return {InnerVerdict::yes, found, ""};
    }
    return {InnerVerdict::unknown, {}, "no conjugator of length <= " + std::to_string(bound)};
}

inline int default_inner_bound(const GeneratorMap& f) {
    std::size_t longest = 0;
    for (auto& w : f.images) longest = std::max(longest, w.size());
    return static_cast<int>(longest) + 2;
}

// Commutation criterion for outer Whitehead automorphisms: commuting
// multipliers always commute; otherwise the partitions must be (strongly)
// compatible and neither may split the other's multiplier.
inline bool outer_commute_predicate(const SimplicialGraph& g, const WhiteheadAuto& a1,
                                    const WhiteheadAuto& a2) {
    int m = a1.multiplier.vertex(), n = a2.multiplier.vertex();
    if (m == n || g.adjacent(m, n)) return true;
    return compatible(g, a1.partition, a2.partition, Compat::strong) &&
           !a2.partition.splits(m) && !a1.partition.splits(n);
}

// Brute-force commutation check: is (a1 a2)(a2 a1)^-1 inner?
inline InnerVerdict outer_commute_oracle(const SimplicialGraph& g, const WhiteheadAuto& a1,
                                         const WhiteheadAuto& a2, int bound,
                                         int ceiling = kDefaultWordCeiling) {
    GeneratorMap f1 = to_generator_map(g, a1);
    GeneratorMap f2 = to_generator_map(g, a2);
    GeneratorMap h1 = compose(g, f1, f2, ceiling);
    GeneratorMap inv = compose(g, to_generator_map(g, invert(g, a1)),
                               to_generator_map(g, invert(g, a2)), ceiling);
    GeneratorMap q = compose(g, h1, inv, ceiling);
    return is_inner(g, q, bound).verdict;
}

// One factor of a nest decomposition: nest index and exponent +-1.
using NestWord = std::vector<std::pair<int, int>>;

// Writes phi(Q,m) as a word in a maximal nest based at m, following the
// telescoping phi(P_i,m) phi(P_{i-1},m)^-1 per block of Q.  When Q uses the
// block missing from the largest nest side, the product realizes the outer
// class up to conjugation by m (composing with it recovers equality).
inline NestWord decompose_in_nest(const SimplicialGraph& g, const GWPartition& q,
                                  const std::vector<GWPartition>& nest_parts, Letter m) {
    if (!q.bases.contains(m)) throw Error("partition is not based at the multiplier");
    auto blocks = inseparable_sets(g, m);
    int expected = static_cast<int>(blocks.size()) - 3;
    if (static_cast<int>(nest_parts.size()) != expected)
        throw PreconditionError("nest is not maximal: expected " + std::to_string(expected) +
                                " partitions, got " + std::to_string(nest_parts.size()));
    std::vector<LetterSet> sides;
    for (auto& p : nest_parts) {
        if (!p.bases.contains(m)) throw PreconditionError("nest member not based at multiplier");
        sides.push_back(p.side_containing(m));
    }
    std::vector<int> order(sides.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sides[a].size() < sides[b].size(); });
    std::vector<LetterSet> chain{LetterSet::single(m)};
    for (int idx : order) {
        if (!chain.back().subset_of(sides[idx]))
            throw PreconditionError("nest sides are not totally ordered by inclusion");
        chain.push_back(sides[idx]);
    }
    chain.push_back(g.all_letters().minus(g.link_letters(m.vertex()))
                        .minus(LetterSet::single(m.inverse())));
    int k = static_cast<int>(nest_parts.size());

    LetterSet Q = q.side_containing(m);
    NestWord word;
    for (int i = 1; i <= k + 1; ++i) {
        LetterSet block = chain[i].minus(chain[i - 1]);
        if (!block.subset_of(Q)) {
            if (block.intersects(Q)) throw Error("partition side is not a union of nest blocks");
            continue;
        }
        if (i <= k) word.emplace_back(order[i - 1], +1);
        if (i - 1 >= 1) word.emplace_back(order[i - 2], -1);
    }
    return word;
}

} // namespace raagw
