#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "raagw/core.hpp"

namespace raagw {

// Finite simplicial graph: loop-free, symmetric adjacency, total vertex
// order given by declaration order.  All set enumerations downstream sort
// by this order, which is what makes the library's output deterministic.
struct SimplicialGraph {
    std::vector<std::string> names;
    std::vector<std::uint32_t> adj; // adjacency masks over vertex indices

    int vertex_count() const { return static_cast<int>(names.size()); }
    int letter_count() const { return 2 * vertex_count(); }

    bool adjacent(int u, int v) const { return (adj[u] >> v) & 1; }

    std::uint32_t all_vertices() const {
        return vertex_count() == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << vertex_count()) - 1;
    }

    std::uint32_t link_mask(int v) const { return adj[v]; }
    std::uint32_t star_mask(int v) const { return adj[v] | (std::uint32_t(1) << v); }

    LetterSet link_letters(int v) const { return vertices_to_letters(adj[v]); }
    LetterSet star_letters(int v) const { return vertices_to_letters(star_mask(v)); }

    LetterSet all_letters() const {
        return letter_count() == 64 ? LetterSet(~std::uint64_t(0))
                                    : LetterSet((std::uint64_t(1) << letter_count()) - 1);
    }

    static LetterSet vertices_to_letters(std::uint32_t vs) {
        LetterSet out;
        for (std::uint32_t b = vs; b; b &= b - 1) {
            int v = std::countr_zero(b);
            out.insert(Letter::positive(v));
            out.insert(Letter::negative(v));
        }
        return out;
    }

    static std::uint32_t letters_to_vertices(LetterSet ls) {
        std::uint32_t vs = 0;
        for (std::uint64_t b = ls.bits; b; b &= b - 1)
            vs |= std::uint32_t(1) << (std::countr_zero(b) >> 1);
        return vs;
    }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < vertex_count(); ++i)
            if (names[i] == name) return i;
        throw Error("unknown vertex '" + name + "'");
    }

    std::optional<int> try_vertex_index(const std::string& name) const {
        for (int i = 0; i < vertex_count(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }

    std::string letter_name(Letter x) const {
        return x.is_negative() ? names[x.vertex()] + "^-1" : names[x.vertex()];
    }

    // Canonical text form; also the input to the graph hash.
    std::string to_text() const {
        std::ostringstream os;
        os << "vertices:";
        for (auto& n : names) os << ' ' << n;
        os << "\nedges:";
        for (int u = 0; u < vertex_count(); ++u)
            for (int v = u + 1; v < vertex_count(); ++v)
                if (adjacent(u, v)) os << ' ' << names[u] << '-' << names[v];
        os << '\n';
        return os.str();
    }

    std::uint64_t hash() const { return fnv1a(to_text()); }
};

inline SimplicialGraph make_graph(std::vector<std::string> names,
                                  const std::vector<std::pair<int, int>>& edges) {
    SimplicialGraph g;
    if (names.size() > 32) throw Error("graphs with more than 32 vertices are not supported");
    g.names = std::move(names);
    g.adj.assign(g.names.size(), 0);
    for (auto [u, v] : edges) {
        if (u == v) throw Error("loop edge at vertex '" + g.names[u] + "'");
        g.adj[u] |= std::uint32_t(1) << v;
        g.adj[v] |= std::uint32_t(1) << u;
    }
    return g;
}

// Graph file format: optional '#' comments, a "vertices: n1 n2 ..." line,
// then "edges:" followed by whitespace-separated "u-v" tokens.
inline SimplicialGraph parse_graph(const std::string& text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;
    bool saw_vertices = false, in_edges = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "vertices:") {
                if (saw_vertices) throw ParseError("line " + std::to_string(lineno) + ": repeated vertices section");
                saw_vertices = true;
                in_edges = false;
                continue;
            }
            if (tok == "edges:") {
                if (!saw_vertices) throw ParseError("line " + std::to_string(lineno) + ": edges before vertices");
                in_edges = true;
                continue;
            }
            if (!saw_vertices) throw ParseError("line " + std::to_string(lineno) + ": expected 'vertices:'");
            if (!in_edges) {
                if (index.count(tok)) throw ParseError("line " + std::to_string(lineno) + ": duplicate vertex '" + tok + "'");
                index[tok] = static_cast<int>(names.size());
                names.push_back(tok);
                if (names.size() > 32) throw ParseError("line " + std::to_string(lineno) + ": too many vertices (max 32)");
                continue;
            }
            auto dash = tok.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
                throw ParseError("line " + std::to_string(lineno) + ": bad edge token '" + tok + "'");
            std::string a = tok.substr(0, dash), b = tok.substr(dash + 1);
            auto ia = index.find(a), ib = index.find(b);
            if (ia == index.end()) throw ParseError("line " + std::to_string(lineno) + ": unknown vertex '" + a + "'");
            if (ib == index.end()) throw ParseError("line " + std::to_string(lineno) + ": unknown vertex '" + b + "'");
            if (ia->second == ib->second) throw ParseError("line " + std::to_string(lineno) + ": loop edge '" + tok + "'");
            edges.emplace_back(ia->second, ib->second);
        }
    }
    if (!saw_vertices) throw ParseError("missing 'vertices:' line");
    return make_graph(std::move(names), edges);
}

inline std::uint32_t link(const SimplicialGraph& g, int v) { return g.link_mask(v); }
inline std::uint32_t star(const SimplicialGraph& g, int v) { return g.star_mask(v); }

// BFS distance; nullopt when u and v lie in different components.
inline std::optional<int> distance(const SimplicialGraph& g, int u, int v) {
    if (u == v) return 0;
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> queue{u};
    dist[u] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (std::uint32_t b = g.adj[x]; b; b &= b - 1) {
            int y = std::countr_zero(b);
            if (dist[y] >= 0) continue;
            dist[y] = dist[x] + 1;
            if (y == v) return dist[y];
            queue.push_back(y);
        }
    }
    return std::nullopt;
}

// Connected components of the induced subgraph on `domain`.
inline std::vector<std::uint32_t> components(const SimplicialGraph& g, std::uint32_t domain) {
    std::vector<std::uint32_t> comps;
    std::uint32_t seen = 0;
    for (std::uint32_t b = domain; b; b &= b - 1) {
        int v = std::countr_zero(b);
        if ((seen >> v) & 1) continue;
        std::uint32_t comp = std::uint32_t(1) << v;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (std::uint32_t nb = g.adj[x] & domain & ~comp; nb; nb &= nb - 1) {
                int y = std::countr_zero(nb);
                comp |= std::uint32_t(1) << y;
                stack.push_back(y);
            }
        }
        seen |= comp;
        comps.push_back(comp);
    }
    return comps;
}

struct VertexClass {
    std::uint32_t members = 0;
    bool abelian = false;
};

struct VertexRelations {
    // leq[u] bit v set when lk(u) is contained in st(v).
    std::vector<std::uint32_t> leq_circ, leq_star, leq;
    std::vector<VertexClass> classes;
    std::vector<int> class_of;
    std::uint32_t principal = 0;
    std::uint32_t maximal = 0;

    bool is_principal(int v) const { return (principal >> v) & 1; }
    bool is_maximal(int v) const { return (maximal >> v) & 1; }
};

inline VertexRelations relations(const SimplicialGraph& g) {
    int n = g.vertex_count();
    VertexRelations r;
    r.leq_circ.assign(n, 0);
    r.leq_star.assign(n, 0);
    r.leq.assign(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            bool circ = (g.link_mask(u) & ~g.link_mask(v)) == 0;
            bool starr = (g.star_mask(u) & ~g.star_mask(v)) == 0;
            bool le = (g.link_mask(u) & ~g.star_mask(v)) == 0;
            if (circ) r.leq_circ[u] |= std::uint32_t(1) << v;
            if (starr) r.leq_star[u] |= std::uint32_t(1) << v;
            if (le) r.leq[u] |= std::uint32_t(1) << v;
        }

    r.class_of.assign(n, -1);
    for (int u = 0; u < n; ++u) {
        if (r.class_of[u] >= 0) continue;
        VertexClass cls;
        int circ_size = 0;
        for (int v = 0; v < n; ++v) {
            bool uv = (r.leq[u] >> v) & 1, vu = (r.leq[v] >> u) & 1;
            if (uv && vu) {
                cls.members |= std::uint32_t(1) << v;
                r.class_of[v] = static_cast<int>(r.classes.size());
                if (g.link_mask(v) == g.link_mask(u)) ++circ_size;
            }
        }
        // abelian when [v]_o is a singleton (equivalently, members share stars)
        cls.abelian = circ_size == 1 || std::popcount(cls.members) == 1;
        r.classes.push_back(cls);
    }

    for (int u = 0; u < n; ++u) {
        bool dominated = false;
        for (int v = 0; v < n && !dominated; ++v)
            if (v != u && ((r.leq_circ[u] >> v) & 1) && g.link_mask(u) != g.link_mask(v)) dominated = true;
        if (!dominated) r.principal |= std::uint32_t(1) << u;

        bool above = false;
        for (int v = 0; v < n && !above; ++v)
            if (((r.leq[u] >> v) & 1) && !((r.leq[v] >> u) & 1)) above = true;
        if (!above) r.maximal |= std::uint32_t(1) << u;
    }
    return r;
}

inline std::uint32_t principal_vertices(const SimplicialGraph& g) { return relations(g).principal; }

// The m-inseparable subsets I(m): per singleton component {u} of
// G - lk(m) the two sets {u},{u^-1}; per multi-vertex component C the
// set C^+-.  Depends only on lk(m), so I(m) = I(m^-1).
inline std::vector<LetterSet> inseparable_sets(const SimplicialGraph& g, Letter m) {
    std::uint32_t domain = g.all_vertices() & ~g.link_mask(m.vertex());
    std::vector<LetterSet> out;
    for (std::uint32_t comp : components(g, domain)) {
        if (std::popcount(comp) == 1) {
            int u = std::countr_zero(comp);
            out.push_back(LetterSet::single(Letter::positive(u)));
            out.push_back(LetterSet::single(Letter::negative(u)));
        } else {
            out.push_back(SimplicialGraph::vertices_to_letters(comp));
        }
    }
    std::sort(out.begin(), out.end(),
              [](LetterSet a, LetterSet b) { return a.least() < b.least(); });
    return out;
}

struct BarbedResult {
    bool barbed = true;
    int witness_u = -1, witness_v = -1;
};

// Barbed: every non-principal u has lk(u) strictly inside lk(v) for every
// v at distance exactly 2.
inline BarbedResult is_barbed(const SimplicialGraph& g) {
    auto rel = relations(g);
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        if (rel.is_principal(u)) continue;
        for (int v = 0; v < n; ++v) {
            if (v == u) continue;
            auto d = distance(g, u, v);
            if (!d || *d != 2) continue;
            bool strict = ((rel.leq_circ[u] >> v) & 1) && g.link_mask(u) != g.link_mask(v);
            if (!strict) return {false, u, v};
        }
    }
    return {};
}

namespace detail {
inline void automorphism_search(const SimplicialGraph& g, std::vector<int>& image,
                                std::vector<bool>& used, int depth,
                                const std::vector<std::uint64_t>& sig,
                                std::vector<std::vector<int>>& out) {
    int n = g.vertex_count();
    if (depth == n) {
        out.push_back(image);
        return;
    }
    for (int t = 0; t < n; ++t) {
        if (used[t] || sig[t] != sig[depth]) continue;
        bool ok = true;
        for (int p = 0; p < depth && ok; ++p)
            if (g.adjacent(depth, p) != g.adjacent(image[p], t)) ok = false;
        if (!ok) continue;
        image[depth] = t;
        used[t] = true;
        automorphism_search(g, image, used, depth + 1, sig, out);
        used[t] = false;
    }
    image[depth] = -1;
}
} // namespace detail

// All adjacency-preserving vertex permutations, lexicographically ordered.
// Degree-profile signatures prune the backtracking; fine below ~12 vertices.
inline std::vector<std::vector<int>> graph_automorphisms(const SimplicialGraph& g) {
    int n = g.vertex_count();
    std::vector<std::uint64_t> sig(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> nbr_degs;
        for (std::uint32_t b = g.adj[v]; b; b &= b - 1) nbr_degs.push_back(std::popcount(g.adj[std::countr_zero(b)]));
        std::sort(nbr_degs.begin(), nbr_degs.end());
        std::string key = std::to_string(std::popcount(g.adj[v])) + ":";
        for (int d : nbr_degs) key += std::to_string(d) + ",";
        sig[v] = fnv1a(key);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    detail::automorphism_search(g, image, used, 0, sig, out);
    return out;
}

} // namespace raagw
