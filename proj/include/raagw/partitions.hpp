#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

#include "raagw/words.hpp"

namespace raagw {

enum class Compat { strong, weak };

// Three-part partition {P | P* | lk(P)^+-} of V^+-.  Identity is the
// unordered pair of sides; orientation is canonical (side_p holds the least
// letter), so equality is plain field comparison.  `bases` holds every
// letter the partition is based at, on both sides.
struct GWPartition {
    LetterSet side_p, side_q, link, bases;

    bool splits(int vertex) const {
        Letter x = Letter::positive(vertex);
        return (side_p.contains(x) && side_q.contains(x.inverse())) ||
               (side_q.contains(x) && side_p.contains(x.inverse()));
    }

    bool has_base_vertex(int vertex) const {
        return bases.contains(Letter::positive(vertex)) || bases.contains(Letter::negative(vertex));
    }

    std::uint32_t base_vertices() const { return SimplicialGraph::letters_to_vertices(bases); }

    // Side containing x; throws if x lies in the link part.
    LetterSet side_containing(Letter x) const {
        if (side_p.contains(x)) return side_p;
        if (side_q.contains(x)) return side_q;
        throw Error("letter is not in either side of the partition");
    }
    LetterSet side_opposite(Letter x) const {
        if (side_p.contains(x)) return side_q;
        if (side_q.contains(x)) return side_p;
        throw Error("letter is not in either side of the partition");
    }

    friend bool operator==(const GWPartition& a, const GWPartition& b) {
        return a.side_p == b.side_p && a.side_q == b.side_q;
    }
    friend bool operator!=(const GWPartition& a, const GWPartition& b) { return !(a == b); }
    friend bool operator<(const GWPartition& a, const GWPartition& b) {
        if (a.side_p != b.side_p) return a.side_p < b.side_p;
        return a.side_q < b.side_q;
    }
};

struct GWPartitionHash {
    std::size_t operator()(const GWPartition& p) const {
        return static_cast<std::size_t>(p.side_p.bits * 0x9e3779b97f4a7c15ULL ^ p.side_q.bits);
    }
};

namespace detail {

inline GWPartition finish_partition(const SimplicialGraph& g, LetterSet p, LetterSet q, LetterSet link) {
    GWPartition out;
    if ((p | q).empty()) throw Error("empty partition");
    if (q.contains((p | q).least()))
        std::swap(p, q);
    out.side_p = p;
    out.side_q = q;
    out.link = link;
    std::uint32_t link_vs = SimplicialGraph::letters_to_vertices(link);
    for (Letter x : (p | q).letters()) {
        bool split = (p.contains(x) && q.contains(x.inverse())) || (q.contains(x) && p.contains(x.inverse()));
        if (split && g.link_mask(x.vertex()) == link_vs) out.bases.insert(x);
    }
    return out;
}

} // namespace detail

// Builds the partition with side p_letters based at m; validates that the
// side is a union of m-inseparable sets containing m but not m^-1 and that
// both sides are thick.
inline GWPartition make_partition(const SimplicialGraph& g, LetterSet p_letters, Letter m) {
    if (!p_letters.contains(m)) throw Error("side does not contain the base letter");
    if (p_letters.contains(m.inverse())) throw Error("side contains the inverse of the base letter");
    LetterSet link = g.link_letters(m.vertex());
    if (p_letters.intersects(link)) throw Error("side meets the link of the base");
    LetterSet rest = p_letters;
    for (const LetterSet& block : inseparable_sets(g, m)) {
        if (block.intersects(p_letters)) {
            if (!block.subset_of(p_letters))
                throw Error("side is not a union of inseparable sets at the base");
            rest = rest.minus(block);
        }
    }
    if (!rest.empty()) throw Error("side is not a union of inseparable sets at the base");
    LetterSet q = g.all_letters().minus(link).minus(p_letters);
    if (p_letters.size() < 2 || q.size() < 2) throw Error("partition is not thick");
    return detail::finish_partition(g, p_letters, q, link);
}

// Distinct partitions with at least one base vertex in U, canonically sorted.
inline std::vector<GWPartition> enumerate_partitions(const SimplicialGraph& g, std::uint32_t U) {
    std::unordered_set<GWPartition, GWPartitionHash> seen;
    for (std::uint32_t ub = U; ub; ub &= ub - 1) {
        int u = std::countr_zero(ub);
        Letter m = Letter::positive(u);
        auto blocks = inseparable_sets(g, m);
        std::vector<LetterSet> free_blocks;
        for (auto& b : blocks)
            if (!b.contains(m) && !b.contains(m.inverse())) free_blocks.push_back(b);
        int k = static_cast<int>(free_blocks.size());
        if (k > 24) throw BudgetError("too many inseparable sets to enumerate");
        LetterSet link = g.link_letters(u);
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t(1) << k); ++mask) {
            LetterSet p = LetterSet::single(m);
            for (int i = 0; i < k; ++i)
                if ((mask >> i) & 1) p = p | free_blocks[i];
            LetterSet q = g.all_letters().minus(link).minus(p);
            if (p.size() < 2 || q.size() < 2) continue;
            seen.insert(detail::finish_partition(g, p, q, link));
        }
    }
    std::vector<GWPartition> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline bool splits(const GWPartition& part, int vertex) { return part.splits(vertex); }

// Number of m-inseparable subsets in the side containing m.
inline int m_length(const SimplicialGraph& g, const GWPartition& part, Letter m) {
    if (!part.bases.contains(m)) throw Error("letter is not a base of the partition");
    LetterSet side = part.side_containing(m);
    int count = 0;
    for (const LetterSet& block : inseparable_sets(g, m))
        if (block.subset_of(side)) ++count;
    return count;
}

// Compatibility of two partitions: disjoint sides for some choice, or a
// pair of commuting bases (distinct stars in strong mode, distinct vertices
// in weak mode).
inline bool compatible(const SimplicialGraph& g, const GWPartition& a, const GWPartition& b,
                       Compat mode) {
    if (!a.side_p.intersects(b.side_p) || !a.side_p.intersects(b.side_q) ||
        !a.side_q.intersects(b.side_p) || !a.side_q.intersects(b.side_q))
        return true;
    for (std::uint32_t mb = a.base_vertices(); mb; mb &= mb - 1) {
        int m = std::countr_zero(mb);
        for (std::uint32_t nb = b.base_vertices(); nb; nb &= nb - 1) {
            int n = std::countr_zero(nb);
            if (!g.adjacent(m, n)) continue;
            if (mode == Compat::weak) return true;
            if (g.star_mask(m) != g.star_mask(n)) return true;
        }
    }
    return false;
}

// Both sides intersected with V^+- \ st(m)^+-, in (containing-m, opposite) order.
inline std::pair<LetterSet, LetterSet> reduced_sides(const SimplicialGraph& g,
                                                     const GWPartition& part, Letter m) {
    if (!part.bases.contains(m)) throw Error("letter is not a base of the partition");
    LetterSet st = g.star_letters(m.vertex());
    return {part.side_containing(m).minus(st), part.side_opposite(m).minus(st)};
}

// Exchange the base v for w (st(v) = st(w), or st(v) strictly inside st(w)
// for the starless variant): the side containing v maps to
// (side \ ({v} u lk(v)^+-)) u {w} and the rest is recomputed at w.
inline GWPartition exchange(const SimplicialGraph& g, const GWPartition& part, Letter v, Letter w) {
    if (!part.bases.contains(v)) throw Error("exchange: v is not a base of the partition");
    std::uint32_t sv = g.star_mask(v.vertex()), sw = g.star_mask(w.vertex());
    if ((sv & ~sw) != 0) throw Error("exchange: st(v) is not contained in st(w)");
    if (v == w) return part;
    LetterSet side = part.side_containing(v);
    LetterSet new_side = side.minus(LetterSet::single(v)).minus(g.link_letters(v.vertex()));
    new_side.insert(w);
    return make_partition(g, new_side, w);
}

// Image under the signed permutation induced by a graph automorphism plus a
// set of inverted vertices.
inline GWPartition relabel(const SimplicialGraph& g, const GWPartition& part,
                           const std::vector<int>& sigma, std::uint32_t inversions) {
    auto map_letter = [&](Letter x) {
        bool flip = (inversions >> x.vertex()) & 1;
        return Letter::make(sigma[x.vertex()], (x.is_negative() ^ flip) ? -1 : +1);
    };
    auto map_set = [&](LetterSet s) {
        LetterSet out;
        for (Letter x : s.letters()) out.insert(map_letter(x));
        return out;
    };
    return detail::finish_partition(g, map_set(part.side_p), map_set(part.side_q), map_set(part.link));
}

struct NestEntry {
    GWPartition part;
    LetterSet side; // the chosen side, ascending along the nest
};

namespace detail {

inline bool try_nest_orientation(std::vector<NestEntry>& entries,
                                 const std::vector<std::pair<LetterSet, LetterSet>>& reduced,
                                 std::uint32_t flips) {
    std::vector<std::pair<LetterSet, int>> chosen;
    for (std::size_t i = 0; i < reduced.size(); ++i)
        chosen.emplace_back((flips >> i) & 1 ? reduced[i].second : reduced[i].first,
                            static_cast<int>(i));
    std::stable_sort(chosen.begin(), chosen.end(),
                     [](auto& a, auto& b) { return a.first.size() < b.first.size(); });
    for (std::size_t i = 1; i < chosen.size(); ++i)
        if (!chosen[i - 1].first.subset_of(chosen[i].first)) return false;
    std::vector<NestEntry> out;
    for (auto& [rs, idx] : chosen) {
        NestEntry e = entries[idx];
        e.side = (flips >> idx) & 1 ? e.part.side_opposite(e.side.least())
                                    : e.part.side_containing(e.side.least());
        out.push_back(e);
    }
    entries = std::move(out);
    return true;
}

} // namespace detail

// Orders pairwise-compatible partitions based in one equivalence class so
// the chosen reduced sides form an inclusion chain.  Tries orientations by
// backtracking over side choices; throws when no chain exists.
inline std::vector<NestEntry> nest(const SimplicialGraph& g, const std::vector<GWPartition>& parts) {
    if (parts.empty()) return {};
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!compatible(g, parts[i], parts[j], Compat::strong))
                throw PreconditionError("nest: partitions are not pairwise compatible");

    std::vector<NestEntry> entries;
    std::vector<std::pair<LetterSet, LetterSet>> reduced;
    for (auto& p : parts) {
        Letter base = p.bases.least();
        NestEntry e{p, p.side_containing(base)};
        entries.push_back(e);
        reduced.push_back(reduced_sides(g, p, base));
    }
    if (parts.size() > 20) throw BudgetError("nest: too many partitions");
    for (std::uint32_t flips = 0; flips < (std::uint32_t(1) << parts.size()); ++flips) {
        std::vector<NestEntry> attempt = entries;
        if (detail::try_nest_orientation(attempt, reduced, flips)) return attempt;
    }
    throw Error("nest: no inclusion ordering of reduced sides exists");
}

// Partition text: three |-separated letter lists in braces; the link part
// may be written * to mean "computed".
inline std::string partition_to_string(const SimplicialGraph& g, const GWPartition& p) {
    auto list = [&](LetterSet s) {
        std::string out;
        for (Letter x : s.letters()) {
            if (!out.empty()) out += ' ';
            out += g.letter_name(x);
        }
        return out;
    };
    return "{" + list(p.side_p) + " | " + list(p.side_q) + " | " + list(p.link) + "}";
}

inline GWPartition parse_partition(const SimplicialGraph& g, const std::string& text) {
    std::string body = text;
    auto open = body.find('{');
    auto close = body.rfind('}');
    if (open != std::string::npos || close != std::string::npos) {
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParseError("unbalanced braces in partition '" + text + "'");
        body = body.substr(open + 1, close - open - 1);
    }
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto bar = body.find('|', start);
        parts.push_back(body.substr(start, bar == std::string::npos ? bar : bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    if (parts.size() != 3) throw ParseError("a partition needs three |-separated parts");
    auto to_set = [&](const std::string& s) {
        LetterSet out;
        for (Letter x : parse_word(g, s)) out.insert(x);
        return out;
    };
    LetterSet p = to_set(parts[0]);
    LetterSet q = to_set(parts[1]);
    std::string link_text = parts[2];
    link_text.erase(std::remove_if(link_text.begin(), link_text.end(),
                                   [](unsigned char c) { return std::isspace(c) != 0; }),
                    link_text.end());
    LetterSet link = link_text == "*" ? g.all_letters().minus(p).minus(q) : to_set(parts[2]);
    if ((p | q | link) != g.all_letters() || p.intersects(q) || p.intersects(link) || q.intersects(link))
        throw ParseError("parts do not partition the letter set");
    GWPartition out = detail::finish_partition(g, p, q, link);
    if (out.bases.empty()) throw ParseError("partition has no base letter");
    // round through make_partition for full validation
    return make_partition(g, out.side_p.contains(out.bases.least()) ? out.side_p : out.side_q,
                          out.bases.least());
}

} // namespace raagw
