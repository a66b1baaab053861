#pragma once

#include <random>
#include <string>
#include <vector>

#include "raagw/graph.hpp"

namespace raagw {

namespace detail {

inline SimplicialGraph edgeless(int n) {
    if (n < 1 || n > 26) throw Error("EDGELESS(n) needs 1 <= n <= 26");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
    return make_graph(std::move(names), {});
}

inline SimplicialGraph diamonds(int d) {
    if (d < 1 || d > 10) throw Error("DIAMONDS(d) needs 1 <= d <= 10");
    std::vector<std::string> names{"c0"};
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= d; ++i) {
        int c_prev = static_cast<int>(names.size()) - 1;
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
        names.push_back("c" + std::to_string(i));
        int a = c_prev + 1, b = c_prev + 2, c = c_prev + 3;
        edges.insert(edges.end(), {{c_prev, a}, {c_prev, b}, {a, c}, {b, c}});
    }
    return make_graph(std::move(names), edges);
}

} // namespace detail

// Built-in graphs addressable by name; the parameterized ones take the
// parameter in parentheses, e.g. EDGELESS(4) or DIAMONDS(2).
inline SimplicialGraph load_fixture(const std::string& name) {
    auto open = name.find('(');
    if (open != std::string::npos) {
        if (name.back() != ')') throw Error("bad fixture name '" + name + "'");
        std::string base = name.substr(0, open);
        int arg = 0;
        try {
            arg = std::stoi(name.substr(open + 1, name.size() - open - 2));
        } catch (...) {
            throw Error("bad fixture parameter in '" + name + "'");
        }
        if (base == "EDGELESS") return detail::edgeless(arg);
        if (base == "DIAMONDS") return detail::diamonds(arg);
        throw Error("unknown fixture '" + name + "'");
    }
    if (name == "PATH3") return make_graph({"a", "b", "c"}, {{0, 1}, {1, 2}});
    if (name == "TRIANGLE") return make_graph({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
    if (name == "EX1")
        return make_graph({"m", "u", "v1", "v2", "x1", "x2", "x3", "x4"},
                          {{0, 4}, {0, 5}, {0, 6}, {0, 7}, {4, 7}, {4, 1}, {5, 1}, {7, 2}, {6, 3}, {2, 3}});
    if (name == "FORK")
        return make_graph({"v0", "v1", "a1", "a2", "a3", "b1", "b2", "b3"},
                          {{0, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}});
    if (name == "SIMPLETREE")
        return make_graph({"v0", "v1", "a1", "a2", "b1", "b2"},
                          {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
    if (name == "NONBARBED")
        return make_graph({"u", "v", "w", "p", "q"}, {{0, 2}, {1, 2}, {2, 3}, {3, 4}});
    throw Error("unknown fixture '" + name + "'");
}

inline std::vector<std::string> fixture_names() {
    return {"EDGELESS(2)", "EDGELESS(3)", "EDGELESS(4)", "PATH3", "TRIANGLE",
            "EX1", "DIAMONDS(1)", "DIAMONDS(2)", "FORK", "SIMPLETREE", "NONBARBED"};
}

// Seeded random graph on 2..7 vertices, used by the property suites.
inline SimplicialGraph random_graph(std::uint64_t seed, int max_vertices = 7) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    std::uniform_int_distribution<int> nd(2, max_vertices);
    int n = nd(rng);
    std::uniform_real_distribution<double> pd(0.15, 0.85);
    double p = pd(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) edges.emplace_back(u, v);
    return make_graph(std::move(names), edges);
}

} // namespace raagw
