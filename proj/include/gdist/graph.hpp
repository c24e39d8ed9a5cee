#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdist/errors.hpp"

namespace gdist {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;

    // Rejects self-loops, duplicate edges (in either orientation) and
    // out-of-range endpoints. Edges are stored canonically with u < v,
    // sorted lexicographically.
    Graph(int n, std::span<const Edge> edges, std::string name = {})
        : n_(n), name_(std::move(name)) {
        if (n < 0) throw ValidationError("vertex count must be nonnegative");
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n) {
                throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") has an endpoint outside [0," + std::to_string(n) + ")");
            }
            if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
            edges_.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end()) {
            throw ValidationError("duplicate edge (" + std::to_string(dup->first) + "," +
                                  std::to_string(dup->second) + ")");
        }
        adjacency_.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    }

    int vertexCount() const { return n_; }
    std::size_t edgeCount() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    bool hasEdge(Vertex u, Vertex v) const {
        const auto& nb = adjacency_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Set by generators that know the graph is vertex-transitive (Cayley graphs).
    bool vertexTransitive() const { return vertexTransitive_; }

    Graph withName(std::string name) const {
        Graph g = *this;
        g.name_ = std::move(name);
        return g;
    }
    Graph withLabels(std::vector<std::string> labels) const {
        if (!labels.empty() && static_cast<int>(labels.size()) != n_) {
            throw ValidationError("label table size " + std::to_string(labels.size()) +
                                  " does not match vertex count " + std::to_string(n_));
        }
        Graph g = *this;
        g.labels_ = std::move(labels);
        return g;
    }
    Graph withVertexTransitive(bool flag) const {
        Graph g = *this;
        g.vertexTransitive_ = flag;
        return g;
    }

private:
    int n_ = 0;
    std::string name_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::string> labels_;
    bool vertexTransitive_ = false;
};

inline Graph buildGraph(int n, std::span<const Edge> edges, std::string name = {}) {
    return Graph(n, edges, std::move(name));
}

inline Graph buildGraph(int n, std::initializer_list<Edge> edges, std::string name = {}) {
    return Graph(n, std::span<const Edge>(edges.begin(), edges.size()), std::move(name));
}

constexpr int kUnreached = -1;

// Hop distances from a single source; unreachable vertices get kUnreached.
inline std::vector<int> bfsDistances(const Graph& g, Vertex source) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertexCount()), kUnreached);
    std::vector<Vertex> queue;
    queue.reserve(dist.size());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline bool isConnected(const Graph& g) {
    if (g.vertexCount() <= 1) return true;
    auto d = bfsDistances(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreached; });
}

// Reads a budget from the environment, falling back to the default.
inline long envBudget(const char* var, long fallback) {
    if (const char* s = std::getenv(var)) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return v;
    }
    return fallback;
}

inline long allPairsBudget() { return envBudget("GDIST_ALLPAIRS_BUDGET", 20000); }

// Dense all-pairs hop distances of a connected graph.
class DistanceMatrix {
public:
    using value_type = std::uint16_t;

    DistanceMatrix() = default;

    int vertexCount() const { return n_; }
    int operator()(Vertex x, Vertex y) const {
        return d_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y)];
    }
    std::span<const value_type> row(Vertex x) const {
        return {d_.data() + static_cast<std::size_t>(x) * static_cast<std::size_t>(n_),
                static_cast<std::size_t>(n_)};
    }
    int diameter() const { return diameter_; }

    friend DistanceMatrix allPairsDistances(const Graph& g);

private:
    int n_ = 0;
    int diameter_ = 0;
    std::vector<value_type> d_;
};

// BFS from every vertex. Throws ValidationError naming an unreachable pair
// if the graph is disconnected.
inline DistanceMatrix allPairsDistances(const Graph& g) {
    const int n = g.vertexCount();
    if (n > allPairsBudget() || n > std::numeric_limits<DistanceMatrix::value_type>::max()) {
        throw BudgetExceeded("all-pairs distances requested for " + std::to_string(n) +
                             " vertices, above the budget of " + std::to_string(allPairsBudget()));
    }
    DistanceMatrix dm;
    dm.n_ = n;
    dm.d_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<Vertex> queue(static_cast<std::size_t>(n));
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        std::size_t head = 0, tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            Vertex u = queue[head++];
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[u] + 1;
                    queue[tail++] = w;
                }
            }
        }
        if (tail != static_cast<std::size_t>(n)) {
            auto it = std::find(dist.begin(), dist.end(), kUnreached);
            throw ValidationError("graph is disconnected: vertex " +
                                  std::to_string(it - dist.begin()) + " is unreachable from vertex " +
                                  std::to_string(s));
        }
        auto* row = dm.d_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(n);
        for (int v = 0; v < n; ++v) {
            row[v] = static_cast<DistanceMatrix::value_type>(dist[v]);
            dm.diameter_ = std::max(dm.diameter_, dist[v]);
        }
    }
    return dm;
}

// Average degree kept as an exact fraction 2|E| / n.
struct Rational {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

inline Rational makeRational(long long num, long long den) {
    long long g = std::gcd(num, den);
    if (g == 0) g = 1;
    if (den < 0) g = -g;
    return {num / g, den / g};
}

struct GraphStats {
    int vertexCount = 0;
    std::size_t edgeCount = 0;
    Rational averageDegree;
    int minDegree = 0;
    int maxDegree = 0;
    bool isRegular = false;
    int diameter = 0;
    int radius = 0;
    std::optional<int> girth;  // empty for forests

    bool acyclic() const { return !girth.has_value(); }
};

// Shortest cycle length by BFS from each vertex; empty for forests.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertexCount();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<Vertex> parent(static_cast<std::size_t>(n));
    std::vector<Vertex> queue(static_cast<std::size_t>(n));
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        std::size_t head = 0, tail = 0;
        dist[s] = 0;
        parent[s] = -1;
        queue[tail++] = s;
        while (head < tail) {
            Vertex u = queue[head++];
            if (2 * dist[u] + 1 >= best) break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue[tail++] = w;
                } else if (parent[u] != w) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

inline GraphStats stats(const Graph& g, const DistanceMatrix& dm) {
    if (dm.vertexCount() != g.vertexCount()) {
        throw ValidationError("distance matrix does not match graph vertex count");
    }
    GraphStats s;
    const int n = g.vertexCount();
    s.vertexCount = n;
    s.edgeCount = g.edgeCount();
    s.averageDegree = n == 0 ? Rational{} : makeRational(2 * static_cast<long long>(g.edgeCount()), n);
    s.minDegree = n == 0 ? 0 : std::numeric_limits<int>::max();
    for (Vertex v = 0; v < n; ++v) {
        s.maxDegree = std::max(s.maxDegree, g.degree(v));
        s.minDegree = std::min(s.minDegree, g.degree(v));
    }
    s.isRegular = s.minDegree == s.maxDegree;
    s.diameter = dm.diameter();
    s.radius = std::numeric_limits<int>::max();
    for (Vertex x = 0; x < n; ++x) {
        auto r = dm.row(x);
        s.radius = std::min(s.radius, static_cast<int>(*std::max_element(r.begin(), r.end())));
    }
    if (n == 0) s.radius = 0;
    s.girth = girth(g);
    return s;
}

}  // namespace gdist
