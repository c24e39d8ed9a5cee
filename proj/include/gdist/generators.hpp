#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/groups.hpp"
#include "gdist/random.hpp"

namespace gdist {

inline long vertexBudget() { return envBudget("GDIST_VERTEX_BUDGET", 200000); }

// Family tag plus generating multiset for a Cayley graph of G.
template <FiniteGroup G>
struct CayleySpec {
    std::string family;
    G group;
    std::vector<typename G::Element> generators;
};

namespace detail {

inline std::string joinInts(const std::vector<int>& xs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

}  // namespace detail

// Cayley graph with right multiplication: vertices are the elements reached
// from the identity, edges {g, gs}. Parallel generator images collapse to a
// single edge. The label table holds canonical encodings.
template <FiniteGroup G>
Graph cayleyGraph(const CayleySpec<G>& spec, long budget = vertexBudget()) {
    using Element = typename G::Element;
    const G& grp = spec.group;
    const auto idCode = grp.encode(grp.identity());

    std::set<std::string> genCodes;
    for (const auto& s : spec.generators) genCodes.insert(grp.encode(s));
    if (genCodes.empty()) throw ValidationError("generating set is empty");
    if (genCodes.count(idCode)) throw ValidationError("generating set contains the identity");
    for (const auto& s : spec.generators) {
        if (!genCodes.count(grp.encode(grp.invert(s)))) {
            throw ValidationError("generating set is not symmetric: inverse of " + grp.encode(s) +
                                  " is missing");
        }
    }

    std::vector<Element> elements{grp.identity()};
    std::vector<std::string> labels{idCode};
    std::unordered_map<std::string, int> index{{idCode, 0}};
    std::vector<Edge> edges;
    for (std::size_t head = 0; head < elements.size(); ++head) {
        const Element g = elements[head];
        for (const auto& s : spec.generators) {
            Element h = grp.multiply(g, s);
            auto code = grp.encode(h);
            auto [it, inserted] = index.emplace(code, static_cast<int>(elements.size()));
            if (inserted) {
                if (static_cast<long>(elements.size()) >= budget) {
                    throw BudgetExceeded("Cayley closure for " + spec.family + " exceeds the vertex budget of " +
                                         std::to_string(budget));
                }
                elements.push_back(std::move(h));
                labels.push_back(std::move(code));
            }
            const int u = static_cast<int>(head), v = it->second;
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g(static_cast<int>(elements.size()), edges, spec.family);
    return g.withLabels(std::move(labels)).withVertexTransitive(true);
}

inline Graph cycle(int n) {
    if (n < 3) throw ValidationError("cycle needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges, "C" + std::to_string(n)).withVertexTransitive(true);
}

inline Graph completeGraph(int n) {
    if (n < 1) throw ValidationError("complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, edges, "K" + std::to_string(n)).withVertexTransitive(true);
}

inline Graph path(int n) {
    if (n < 1) throw ValidationError("path needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges, "P" + std::to_string(n));
}

// Vertex x is the bit string with bit j = coordinate j.
inline Graph hypercube(int d) {
    if (d < 1) throw ValidationError("hypercube needs d >= 1, got " + std::to_string(d));
    if (d > 24 || (1L << d) > vertexBudget()) throw BudgetExceeded("hypercube exceeds the vertex budget");
    const int n = 1 << d;
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int x = 0; x < n; ++x) {
        std::string s;
        for (int j = d - 1; j >= 0; --j) s += ((x >> j) & 1) ? '1' : '0';
        labels.push_back(std::move(s));
        for (int j = 0; j < d; ++j) {
            const int y = x ^ (1 << j);
            if (x < y) edges.emplace_back(x, y);
        }
    }
    return Graph(n, edges, "H" + std::to_string(d)).withLabels(std::move(labels)).withVertexTransitive(true);
}

// Cartesian product of cycles, vertices enumerated row-major over coordinates.
inline Graph torus(const std::vector<int>& sizes) {
    if (sizes.empty()) throw ValidationError("torus needs at least one factor");
    long long n = 1;
    for (int s : sizes) {
        if (s < 3) throw ValidationError("torus factor sizes must be >= 3, got " + std::to_string(s));
        n *= s;
        if (n > vertexBudget()) throw BudgetExceeded("torus exceeds the vertex budget");
    }
    const int r = static_cast<int>(sizes.size());
    std::vector<int> stride(static_cast<std::size_t>(r), 1);
    for (int j = r - 2; j >= 0; --j) stride[j] = stride[j + 1] * sizes[j + 1];
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int x = 0; x < n; ++x) {
        std::vector<int> c(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) c[j] = (x / stride[j]) % sizes[j];
        labels.push_back("(" + detail::joinInts(c, ',') + ")");
        for (int j = 0; j < r; ++j) {
            const int next = (c[j] + 1) % sizes[j];
            const int y = x + (next - c[j]) * stride[j];
            edges.emplace_back(std::min(x, y), std::max(x, y));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::string name = sizes.size() == 1 ? "C" + std::to_string(sizes[0]) : "T" + detail::joinInts(sizes, 'x');
    return Graph(static_cast<int>(n), edges, name).withLabels(std::move(labels)).withVertexTransitive(true);
}

inline CayleySpec<LamplighterGroup> lamplighterSpec(int n, int d) {
    LamplighterGroup grp(n, d);
    auto gens = grp.standardGenerators();
    return {"W" + std::to_string(n) + "^" + std::to_string(d), std::move(grp), std::move(gens)};
}

inline Graph lamplighter(int n, int d, long budget = vertexBudget()) {
    auto spec = lamplighterSpec(n, d);
    if (spec.group.order() > budget) {
        throw BudgetExceeded("lamplighter group of order " + std::to_string(spec.group.order()) +
                             " exceeds the vertex budget of " + std::to_string(budget));
    }
    return cayleyGraph(spec, budget);
}

inline CayleySpec<SpecialLinearGroup> slnqSpec(int n, int q) {
    SpecialLinearGroup grp(n, q);
    auto gens = grp.standardGenerators();
    return {"SL" + std::to_string(n) + "(" + std::to_string(q) + ")", std::move(grp), std::move(gens)};
}

inline Graph slnq(int n, int q, long budget = vertexBudget()) {
    auto spec = slnqSpec(n, q);
    if (spec.group.order() > static_cast<long double>(budget)) {
        throw BudgetExceeded("SL_" + std::to_string(n) + "(" + std::to_string(q) +
                             ") exceeds the vertex budget of " + std::to_string(budget));
    }
    return cayleyGraph(spec, budget);
}

// Prism C_{2f} x K_2: vertex (i, s) has index i + s * 2f.
inline Graph prism(int f) {
    if (f < 2) throw ValidationError("prism needs f >= 2");
    const int m = 2 * f;
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
        edges.emplace_back(i, (i + 1) % m);
        edges.emplace_back(m + i, m + (i + 1) % m);
        edges.emplace_back(i, m + i);
    }
    return Graph(2 * m, edges, "Z" + std::to_string(f));
}

// Replaces edge {y1,y2} of y and edge {z1,z2} of the prism C_{2f} x K_2 by
// {y1,z1} and {y2,z2}. Prism vertices are offset by |y|. The default prism
// edge is the first one not touching cycle positions 0 or 2f-1 (the seam).
inline Graph stitch(const Graph& y, int f, std::optional<Edge> yEdge = std::nullopt,
                    std::optional<Edge> zEdge = std::nullopt) {
    for (Vertex v = 0; v < y.vertexCount(); ++v) {
        if (y.degree(v) != 3) throw ValidationError("stitch needs a 3-regular graph; vertex " +
                                                    std::to_string(v) + " has degree " +
                                                    std::to_string(y.degree(v)));
    }
    if (f < 1) throw ValidationError("stitch needs f >= 1");
    if (y.edgeCount() == 0) throw ValidationError("stitch needs a nonempty graph");
    Edge ye = yEdge.value_or(y.edges().front());
    if (ye.first > ye.second) std::swap(ye.first, ye.second);
    if (!y.hasEdge(ye.first, ye.second)) throw ValidationError("chosen edge is not an edge of y");

    const int m = 2 * f;
    // C_2 x K_2 is a multigraph; f = 1 gives the 4-cycle with doubled rungs,
    // which we reject as non-simple.
    if (m < 3) throw ValidationError("stitch needs f >= 2 for a simple prism");
    Graph z = prism(f);
    Edge ze;
    if (zEdge) {
        ze = {std::min(zEdge->first, zEdge->second), std::max(zEdge->first, zEdge->second)};
        if (!z.hasEdge(ze.first, ze.second)) throw ValidationError("chosen prism edge is not an edge");
    } else {
        auto onSeam = [m](int v) {
            const int i = v % m;
            return i == 0 || i == m - 1;
        };
        auto it = std::find_if(z.edges().begin(), z.edges().end(),
                               [&](const Edge& e) { return !onSeam(e.first) && !onSeam(e.second); });
        ze = *it;
    }

    const int off = y.vertexCount();
    std::vector<Edge> edges;
    for (const auto& e : y.edges()) {
        if (e != ye) edges.push_back(e);
    }
    for (const auto& e : z.edges()) {
        if (e != ze) edges.emplace_back(e.first + off, e.second + off);
    }
    edges.emplace_back(ye.first, ze.first + off);
    edges.emplace_back(ye.second, ze.second + off);
    return Graph(off + z.vertexCount(), edges, "stitch(" + y.name() + ",f=" + std::to_string(f) + ")");
}

// Uniform pairing model with rejection of loops and multi-edges; resampled
// until connected. Deterministic in the seed.
inline Graph randomRegular(int n, int k, std::uint64_t seed, int maxAttempts = 10000) {
    if (k < 1) throw ValidationError("degree must be positive");
    if ((static_cast<long long>(n) * k) % 2 != 0) {
        throw ValidationError("n*k must be even for a k-regular graph (n=" + std::to_string(n) +
                              ", k=" + std::to_string(k) + ")");
    }
    if (n <= k) throw ValidationError("random regular graph needs n > k");
    Rng rng(seed);
    std::vector<int> points(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (int attempt = 0; attempt < maxAttempts; ++attempt) {
        for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i) / k;
        rng.shuffle(points);
        std::vector<Edge> edges;
        edges.reserve(points.size() / 2);
        bool ok = true;
        for (std::size_t i = 0; i < points.size(); i += 2) {
            const int u = points[i], v = points[i + 1];
            if (u == v) {
                ok = false;
                break;
            }
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        Graph g(n, edges, "RR" + std::to_string(n) + "_" + std::to_string(k) + "_s" + std::to_string(seed));
        if (isConnected(g)) return g;
    }
    throw ComputationError("random regular graph: retry budget exhausted");
}

}  // namespace gdist
