#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/spectral.hpp"

namespace gdist {

struct Embedding {
    double p = 2.0;
    int dim = 0;
    std::vector<std::vector<double>> vectors;
};

inline void validateEmbedding(const Embedding& e, int n) {
    if (!(e.p >= 1.0) || !std::isfinite(e.p)) throw ValidationError("embedding exponent must be finite and >= 1");
    if (e.dim < 1) throw ValidationError("embedding dimension must be positive");
    if (static_cast<int>(e.vectors.size()) != n) {
        throw ValidationError("embedding has " + std::to_string(e.vectors.size()) + " vectors for " +
                              std::to_string(n) + " vertices");
    }
    for (std::size_t i = 0; i < e.vectors.size(); ++i) {
        if (static_cast<int>(e.vectors[i].size()) != e.dim) {
            throw ValidationError("vector " + std::to_string(i) + " has the wrong length");
        }
        for (double c : e.vectors[i]) {
            if (!std::isfinite(c)) throw ValidationError("vector " + std::to_string(i) + " is not finite");
        }
    }
}

inline double pDistance(std::span<const double> a, std::span<const double> b, double p) {
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
        return s;
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(a[i] - b[i]));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]) / scale, p);
    return scale * std::pow(s, 1.0 / p);
}

struct DistortionReport {
    double lip = 0.0;
    double lipInv = 0.0;
    double distortion = 0.0;
    std::vector<Edge> lipPairs;
    std::vector<Edge> lipInvPairs;
};

namespace detail {
constexpr double kTieTolerance = 1e-12;

inline void recordMax(double value, Edge pair, double& best, std::vector<Edge>& pairs) {
    if (value > best * (1.0 + kTieTolerance)) {
        best = value;
        pairs.assign(1, pair);
    } else if (value >= best * (1.0 - kTieTolerance)) {
        best = std::max(best, value);
        pairs.push_back(pair);
    }
}
}  // namespace detail

// lip over edges, lipInv over all pairs; pairs within 1e-12 relative of
// either maximum are reported.
inline DistortionReport distortion(const Graph& g, const DistanceMatrix& dm, const Embedding& e) {
    const int n = g.vertexCount();
    validateEmbedding(e, n);
    if (dm.vertexCount() != n) throw ValidationError("distance matrix does not match graph");
    if (n < 2) throw ValidationError("distortion needs at least two vertices");
    DistortionReport r;
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const double len = pDistance(e.vectors[x], e.vectors[y], e.p);
            if (len == 0.0) {
                throw ValidationError("vertices " + std::to_string(x) + " and " + std::to_string(y) +
                                      " share a vector");
            }
            detail::recordMax(dm(x, y) / len, {x, y}, r.lipInv, r.lipInvPairs);
        }
    }
    for (const auto& [x, y] : g.edges()) {
        detail::recordMax(pDistance(e.vectors[x], e.vectors[y], e.p), {x, y}, r.lip, r.lipPairs);
    }
    r.distortion = r.lip * r.lipInv;
    return r;
}

// Lipschitz constant over all pairs, for checking that edges attain it.
inline double lipschitzAllPairs(const DistanceMatrix& dm, const Embedding& e) {
    validateEmbedding(e, dm.vertexCount());
    double best = 0.0;
    for (int x = 0; x < dm.vertexCount(); ++x)
        for (int y = x + 1; y < dm.vertexCount(); ++y)
            best = std::max(best, pDistance(e.vectors[x], e.vectors[y], e.p) / dm(x, y));
    return best;
}

inline Embedding scaled(Embedding e, double factor) {
    for (auto& v : e.vectors)
        for (double& c : v) c *= factor;
    return e;
}

// Subtracts the per-coordinate p-center, so that sum_x |G_i(x)|^p is
// minimal in every coordinate.
inline Embedding centered(Embedding e) {
    validateEmbedding(e, static_cast<int>(e.vectors.size()));
    std::vector<double> column(e.vectors.size());
    for (int i = 0; i < e.dim; ++i) {
        for (std::size_t x = 0; x < e.vectors.size(); ++x) column[x] = e.vectors[x][i];
        const double c = pCenter(column, e.p);
        for (auto& v : e.vectors) v[i] -= c;
    }
    return e;
}

// Regular n-gon with unit edge length.
inline Embedding ngonEmbedding(int n) {
    if (n < 4 || n % 2 != 0) throw ValidationError("n-gon embedding needs an even n >= 4, got " + std::to_string(n));
    const double radius = 1.0 / (2.0 * std::sin(std::numbers::pi / n));
    Embedding e{2.0, 2, {}};
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        e.vectors.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
    return e;
}

// 0/1 coordinates, bit j of the vertex index in coordinate j.
inline Embedding hypercubeEmbedding(int d) {
    if (d < 1 || d > 24) throw ValidationError("hypercube embedding needs 1 <= d <= 24");
    Embedding e{2.0, d, {}};
    for (int x = 0; x < (1 << d); ++x) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) v[j] = (x >> j) & 1;
        e.vectors.push_back(std::move(v));
    }
    return e;
}

// phi(k, l) = (e^{2 pi i k/n} / (2 sin(pi/n)), e^{2 pi i l/N} / (2 sin(pi/N)))
// in R^4, matching the row-major vertex order of torus({n, N}).
inline Embedding torusEmbedding(int n, int bigN) {
    if (n < 4 || bigN < 4 || n % 2 || bigN % 2) throw ValidationError("torus embedding needs even n, N >= 4");
    if (n >= bigN) throw ValidationError("torus embedding needs n < N");
    const double ra = 1.0 / (2.0 * std::sin(std::numbers::pi / n));
    const double rb = 1.0 / (2.0 * std::sin(std::numbers::pi / bigN));
    Embedding e{2.0, 4, {}};
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < bigN; ++l) {
            const double s = 2.0 * std::numbers::pi * k / n, t = 2.0 * std::numbers::pi * l / bigN;
            e.vectors.push_back({ra * std::cos(s), ra * std::sin(s), rb * std::cos(t), rb * std::sin(t)});
        }
    }
    return e;
}

inline double torusEmbeddingLowerEstimate(int n, int bigN) {
    const double a = 1.0 / std::sin(std::numbers::pi / n), b = 1.0 / std::sin(std::numbers::pi / bigN);
    return (n + bigN) / (2.0 * std::sqrt(a * a + b * b));
}

}  // namespace gdist
