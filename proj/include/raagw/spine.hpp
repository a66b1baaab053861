#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "raagw/rank.hpp"

namespace raagw {

inline constexpr long long kDefaultStarBudget = 1'000'000;

// Faces of a cube c(empty, upper) are pairs lower <= upper.
struct Cube {
    std::vector<int> lower, upper; // catalog indices, sorted
    int dimension() const { return static_cast<int>(upper.size() - lower.size()); }
};

// The star of the base vertex of the spine: the poset of all compatible
// collections, one k-cube per k-element collection.
struct StarComplex {
    Catalog catalog;
    Compat mode = Compat::weak;
    std::vector<std::vector<int>> collections; // lexicographically sorted index lists
    int top_dimension = 0;

    std::vector<std::size_t> counts_by_dimension() const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(top_dimension) + 1, 0);
        for (auto& c : collections) ++counts[c.size()];
        return counts;
    }

    int find(const std::vector<int>& collection) const {
        auto it = std::lower_bound(collections.begin(), collections.end(), collection);
        if (it == collections.end() || *it != collection) return -1;
        return static_cast<int>(it - collections.begin());
    }

    // Covering relations: collections one element above this one.
    std::vector<int> covers(int id) const {
        std::vector<int> out;
        const auto& base = collections[static_cast<std::size_t>(id)];
        for (std::size_t i = 0; i < catalog.parts.size(); ++i) {
            int idx = static_cast<int>(i);
            if (std::binary_search(base.begin(), base.end(), idx)) continue;
            bool ok = true;
            for (int j : base)
                if (!catalog.adjacency(mode)[static_cast<std::size_t>(idx)].test(static_cast<std::size_t>(j))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<int> next = base;
            next.insert(std::lower_bound(next.begin(), next.end(), idx), idx);
            int found = find(next);
            if (found >= 0) out.push_back(found);
        }
        return out;
    }
};

namespace detail {

inline void star_dfs(const Catalog& cat, Compat mode, std::vector<int>& clique,
                     const std::vector<int>& cand, long long budget,
                     std::vector<std::vector<int>>& out) {
    for (std::size_t pos = 0; pos < cand.size(); ++pos) {
        int v = cand[pos];
        clique.push_back(v);
        out.push_back(clique);
        if (static_cast<long long>(out.size()) > budget)
            throw BudgetError("star complex budget exceeded");
        std::vector<int> next;
        for (std::size_t j = pos + 1; j < cand.size(); ++j)
            if (cat.adjacency(mode)[static_cast<std::size_t>(v)].test(static_cast<std::size_t>(cand[j])))
                next.push_back(cand[j]);
        star_dfs(cat, mode, clique, next, budget, out);
        clique.pop_back();
    }
}

} // namespace detail

inline StarComplex build_star(const SimplicialGraph& g, Compat mode,
                              long long budget = kDefaultStarBudget) {
    StarComplex star;
    star.catalog = build_catalog(g);
    star.mode = mode;
    std::vector<int> all(star.catalog.parts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> clique;
    star.collections.push_back({}); // the base vertex itself
    detail::star_dfs(star.catalog, mode, clique, all, budget, star.collections);
    std::sort(star.collections.begin(), star.collections.end());
    for (auto& c : star.collections)
        star.top_dimension = std::max(star.top_dimension, static_cast<int>(c.size()));
    return star;
}

struct SandwichResult {
    bool sandwiched = false;
    Letter flank_in_side, flank_in_opposite;
};

namespace detail {

inline std::vector<LetterSet> collection_sides(const std::vector<GWPartition>& pi) {
    std::vector<LetterSet> out;
    for (auto& p : pi) {
        out.push_back(p.side_p);
        out.push_back(p.side_q);
    }
    return out;
}

inline bool side_in(const std::vector<LetterSet>& sides, LetterSet s) {
    return std::find(sides.begin(), sides.end(), s) != sides.end();
}

} // namespace detail

// q (based at non-principal u) is sandwiched in pi when principal letters
// m in Q, n in Q* with lk(u) strictly inside their links exist such that
// Q \ ({m} u lk(m)^+-) and Q* \ ({n} u lk(n)^+-) are both sides of pi.
inline SandwichResult is_sandwiched(const SimplicialGraph& g, const GWPartition& q,
                                    const std::vector<GWPartition>& pi) {
    auto rel = relations(g);
    if (!detail::collection_contains(pi, q))
        throw PreconditionError("is_sandwiched: the partition is not in the collection");
    int u = std::countr_zero(q.base_vertices());
    if (rel.is_principal(u)) throw PreconditionError("is_sandwiched: the partition is principal");
    auto sides = detail::collection_sides(pi);
    auto strictly_above = [&](int m) {
        return ((rel.leq_circ[u] >> m) & 1) && g.link_mask(u) != g.link_mask(m);
    };
    Letter ul = q.bases.contains(Letter::positive(u)) ? Letter::positive(u) : Letter::negative(u);
    LetterSet Q = q.side_containing(ul), Qs = q.side_opposite(ul);

    auto find_flank = [&](LetterSet side) -> std::optional<Letter> {
        for (Letter x : side.letters()) {
            int v = x.vertex();
            if (!rel.is_principal(v) || !strictly_above(v)) continue;
            LetterSet trunc = side.minus(LetterSet::single(x)).minus(g.link_letters(v));
            if (detail::side_in(sides, trunc)) return x;
        }
        return std::nullopt;
    };
    auto m = find_flank(Q);
    auto n = find_flank(Qs);
    if (m && n) return {true, *m, *n};
    return {};
}

// Brute force over the whole catalog: q is irreplaceable in the maximum
// collection pi when it is the only partition weakly compatible with all of
// pi \ {q}.
inline bool is_irreplaceable(const SimplicialGraph& g, const Catalog& cat, const GWPartition& q,
                             const std::vector<GWPartition>& pi) {
    if (!detail::collection_contains(pi, q))
        throw PreconditionError("is_irreplaceable: the partition is not in the collection");
    for (auto& cand : cat.parts) {
        if (cand == q || detail::collection_contains(pi, cand)) continue;
        if (detail::compatible_with_all(g, cand, pi, Compat::weak, &q)) return false;
    }
    return true;
}

namespace detail {

// The replacement iteration: repeatedly take the innermost non-principal
// side; a sandwiched partition is the free-face partner, anything else is
// replaced by a principal partition and the scan continues.
inline GWPartition locate_irreplaceable(const SimplicialGraph& g,
                                        const std::vector<GWPartition>& top) {
    auto rel = relations(g);
    std::vector<GWPartition> W = top;
    for (std::size_t round = 0; round <= top.size(); ++round) {
        struct Side {
            LetterSet set;
            const GWPartition* part;
        };
        std::vector<Side> np_sides;
        for (auto& p : W) {
            if (rel.is_principal(std::countr_zero(p.base_vertices()))) continue;
            np_sides.push_back({p.side_p, &p});
            np_sides.push_back({p.side_q, &p});
        }
        if (np_sides.empty())
            throw Error("free-face scan: ran out of non-principal partitions");
        const Side* inner = nullptr;
        for (auto& s : np_sides) {
            bool minimal = true;
            for (auto& t : np_sides)
                if (t.set != s.set && t.set.subset_of(s.set)) {
                    minimal = false;
                    break;
                }
            if (minimal && (!inner || s.set < inner->set)) inner = &s;
        }
        const GWPartition q = *inner->part;
        if (is_sandwiched(g, q, W).sandwiched) return q;

        // Not sandwiched: build the principal replacement.
        Letter u = (q.bases & inner->set).least();
        LetterSet Q = inner->set, Qs = q.side_opposite(u);

        auto sides = collection_sides(W);
        auto largest_proper_inside = [&](LetterSet outer, Letter must) -> std::optional<LetterSet> {
            std::optional<LetterSet> best;
            for (auto& s : sides)
                if (s != outer && s.subset_of(outer) && s.contains(must))
                    if (!best || s.size() > best->size() || (s.size() == best->size() && s < *best))
                        best = s;
            return best;
        };
        auto partition_of_side = [&](LetterSet s) -> const GWPartition* {
            for (auto& p : W)
                if (p.side_p == s || p.side_q == s) return &p;
            return nullptr;
        };

        auto M = largest_proper_inside(Q, u);
        if (!M) throw Error("free-face scan: no inner subset on the base side");
        Letter m = (partition_of_side(*M)->bases & *M).least();

        LetterSet trunc = Q.minus(LetterSet::single(m.inverse())).minus(g.link_letters(m.vertex()));
        GWPartition replacement;
        if (*M != trunc) {
            replacement = make_partition(g, (Qs | *M).minus(g.link_letters(m.vertex())), m);
        } else {
            auto N = largest_proper_inside(Qs, u.inverse());
            if (!N) throw Error("free-face scan: no inner subset on the opposite side");
            const GWPartition* np = partition_of_side(*N);
            if (np->bases.contains(u.inverse())) {
                replacement = make_partition(g, (*N | *M).minus(g.link_letters(m.vertex())), m);
            } else {
                Letter n = (np->bases & *N).least();
                replacement = make_partition(g, (Q | *N).minus(g.link_letters(n.vertex())), n);
            }
        }
        if (collection_contains(W, replacement))
            throw Error("free-face scan: replacement already present");
        if (!compatible_with_all(g, replacement, W, Compat::weak, &q))
            throw Error("free-face scan: replacement is not compatible with the rest");
        for (auto& p : W)
            if (p == q) {
                p = replacement;
                break;
            }
    }
    throw Error("free-face scan: no sandwiched partition found");
}

// Index permutations of the catalog induced by every (graph automorphism,
// inversion set) pair.
inline std::vector<std::vector<int>> symmetry_maps(const SimplicialGraph& g, const Catalog& cat) {
    std::vector<std::vector<int>> maps;
    for (const auto& sigma : graph_automorphisms(g)) {
        for (std::uint32_t inv = 0; inv < (std::uint32_t(1) << g.vertex_count()); ++inv) {
            std::vector<int> map(cat.parts.size());
            bool ok = true;
            for (std::size_t i = 0; i < cat.parts.size() && ok; ++i) {
                map[i] = cat.find(relabel(g, cat.parts[i], sigma, inv));
                if (map[i] < 0) ok = false;
            }
            if (!ok) throw Error("relabeled partition missing from catalog");
            maps.push_back(std::move(map));
        }
    }
    return maps;
}

} // namespace detail

struct CollapseReport {
    // (free face, top cube) pairs, as partition collections
    std::vector<std::pair<std::vector<GWPartition>, std::vector<GWPartition>>> removed_pairs;
    int top_dimension = 0;
    int residual_dimension = 0;
};

// One collapse pass for a barbed graph with M(V) > M(L): every maximum
// cube acquires a free face c(empty, Pi \ Q) for an irreplaceable
// non-principal Q; all top cubes and their free faces are removed.  The
// free-face choice is canonical and transported along relabelings so the
// pairing is orbit-consistent.
inline CollapseReport collapse_pass(const SimplicialGraph& g,
                                    long long budget = kDefaultSearchBudget) {
    auto barbed = is_barbed(g);
    if (!barbed.barbed) throw PreconditionError("collapse_pass: graph is not barbed");
    Catalog cat = build_catalog(g);
    auto rel = relations(g);
    RankReport mv = max_compatible(g, cat, g.all_vertices(), Compat::weak, budget);
    RankReport ml = max_compatible(g, cat, rel.principal, Compat::weak, budget);
    if (mv.m_value <= ml.m_value)
        throw PreconditionError("collapse_pass: M(V) does not exceed M(L)");

    std::vector<int> all(cat.parts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    detail::CliqueSolver solver(cat.adj_weak, budget);
    solver.keys_ = cat.color_keys;
    std::vector<std::vector<int>> tops;
    solver.enumerate_cliques(all, mv.m_value, [&](const std::vector<int>& c) {
        tops.push_back(c);
    });
    for (auto& t : tops) std::sort(t.begin(), t.end());
    std::sort(tops.begin(), tops.end());

    auto parts_of = [&](const std::vector<int>& idxs) {
        std::vector<GWPartition> out;
        for (int i : idxs) out.push_back(cat.parts[static_cast<std::size_t>(i)]);
        return out;
    };

    // candidate free-face partners per top cube, brute-force verified; the
    // paper's scan must land inside this set
    std::vector<std::vector<int>> irreplaceable(tops.size());
    for (std::size_t t = 0; t < tops.size(); ++t) {
        auto members = parts_of(tops[t]);
        for (int idx : tops[t]) {
            const GWPartition& q = cat.parts[static_cast<std::size_t>(idx)];
            if (rel.is_principal(std::countr_zero(q.base_vertices()))) continue;
            if (is_irreplaceable(g, cat, q, members)) irreplaceable[t].push_back(idx);
        }
        if (irreplaceable[t].empty())
            throw Error("collapse_pass: a top cube has no irreplaceable partition");
        GWPartition scanned = detail::locate_irreplaceable(g, members);
        int scanned_idx = cat.find(scanned);
        if (std::find(irreplaceable[t].begin(), irreplaceable[t].end(), scanned_idx) ==
            irreplaceable[t].end())
            throw Error("collapse_pass: scan result is not irreplaceable");
    }

    // canonical first choice, transported through the graph symmetries
    auto sym = detail::symmetry_maps(g, cat);
    std::vector<int> chosen(tops.size(), -1);
    auto find_top = [&](const std::vector<int>& key) {
        auto it = std::lower_bound(tops.begin(), tops.end(), key);
        return it != tops.end() && *it == key ? static_cast<int>(it - tops.begin()) : -1;
    };
    for (std::size_t t = 0; t < tops.size(); ++t) {
        if (chosen[t] >= 0) continue;
        chosen[t] = irreplaceable[t].front();
        for (const auto& map : sym) {
            std::vector<int> image;
            image.reserve(tops[t].size());
            for (int idx : tops[t]) image.push_back(map[static_cast<std::size_t>(idx)]);
            std::sort(image.begin(), image.end());
            int other = find_top(image);
            if (other < 0 || chosen[static_cast<std::size_t>(other)] >= 0) continue;
            int mapped = map[static_cast<std::size_t>(chosen[t])];
            const auto& cands = irreplaceable[static_cast<std::size_t>(other)];
            if (std::find(cands.begin(), cands.end(), mapped) != cands.end())
                chosen[static_cast<std::size_t>(other)] = mapped;
        }
    }

    CollapseReport report;
    report.top_dimension = mv.m_value;
    std::vector<std::vector<int>> faces;
    for (std::size_t t = 0; t < tops.size(); ++t) {
        std::vector<int> face;
        for (int idx : tops[t])
            if (idx != chosen[t]) face.push_back(idx);
        faces.push_back(face);
        report.removed_pairs.emplace_back(parts_of(face), parts_of(tops[t]));
    }
    // each free face belongs to exactly one top cube
    auto unique_faces = faces;
    std::sort(unique_faces.begin(), unique_faces.end());
    if (std::adjacent_find(unique_faces.begin(), unique_faces.end()) != unique_faces.end())
        throw Error("collapse_pass: two top cubes share a free face");

    // residual dimension: some codimension-one collection must survive
    bool survivor = false;
    for (std::size_t t = 0; t < tops.size() && !survivor; ++t)
        for (int drop : tops[t]) {
            if (drop == chosen[t]) continue;
            std::vector<int> face;
            for (int idx : tops[t])
                if (idx != drop) face.push_back(idx);
            if (!std::binary_search(unique_faces.begin(), unique_faces.end(), face)) {
                survivor = true;
                break;
            }
        }
    if (!survivor) throw Error("collapse_pass: could not certify the residual dimension");
    report.residual_dimension = mv.m_value - 1;
    return report;
}

} // namespace raagw
