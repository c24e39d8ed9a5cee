#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/hamiltonian.hpp"
#include "gdist/matching.hpp"

namespace gdist {

// A bijection on 0..n-1 together with its displacement min_x d(x, a(x)).
struct VertexPermutation {
    std::vector<int> image;
    int displacement = 0;
};

inline void requireBijection(std::span<const int> alpha, int n) {
    if (static_cast<int>(alpha.size()) != n) {
        throw ValidationError("permutation has " + std::to_string(alpha.size()) + " entries, expected " +
                              std::to_string(n));
    }
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int y : alpha) {
        if (y < 0 || y >= n || hit[y]) throw ValidationError("image array is not a bijection");
        hit[y] = 1;
    }
}

inline int displacementOfPermutation(const DistanceMatrix& dm, std::span<const int> alpha) {
    const int n = dm.vertexCount();
    requireBijection(alpha, n);
    int best = std::numeric_limits<int>::max();
    for (int x = 0; x < n; ++x) best = std::min(best, dm(x, alpha[x]));
    return n == 0 ? 0 : best;
}

inline VertexPermutation makePermutation(const DistanceMatrix& dm, std::vector<int> image) {
    const int rho = displacementOfPermutation(dm, image);
    return {std::move(image), rho};
}

struct DisplacementResult {
    int value = 0;  // D(X)
    VertexPermutation witness;
    int diameter = 0;
    bool isAntipodal = false;
    // Maximum matching size of the threshold graph at value + 1; strictly
    // below n certifies that no permutation does better.
    int matchingSizeAboveValue = 0;
};

// Perfect matching in {(x, y) : d(x, y) >= t}, if one exists.
inline std::optional<std::vector<int>> permutationWithDisplacementAtLeast(const DistanceMatrix& dm, int t,
                                                                        int* matchingSize = nullptr) {
    const int n = dm.vertexCount();
    auto m = hopcroftKarp(n, n, [&](int x, int y) { return dm(x, y) >= t; });
    if (matchingSize) *matchingSize = m.size;
    if (m.size < n) return std::nullopt;
    return std::move(m.matchLeft);
}

// D(X) by binary search over thresholds; a threshold t is feasible iff the
// bipartite graph {(x, y) : d(x, y) >= t} has a perfect matching (Hall).
// The diameter is probed first since vertex-transitive graphs attain it.
inline DisplacementResult maxDisplacement(const Graph& g, const DistanceMatrix& dm) {
    const int n = g.vertexCount();
    if (dm.vertexCount() != n) throw ValidationError("distance matrix does not match graph");
    DisplacementResult r;
    r.diameter = dm.diameter();
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<int> best = identity;
    int lo = 0, hi = r.diameter;  // lo feasible; hi + 1 infeasible
    int sizeAbove = 0;             // matching size at hi + 1
    if (auto top = permutationWithDisplacementAtLeast(dm, r.diameter)) {
        best = std::move(*top);
        lo = r.diameter;
    } else {
        hi = r.diameter - 1;
        permutationWithDisplacementAtLeast(dm, r.diameter, &sizeAbove);
        while (lo < hi) {
            const int mid = lo + (hi - lo + 1) / 2;
            int size = 0;
            if (auto perm = permutationWithDisplacementAtLeast(dm, mid, &size)) {
                best = std::move(*perm);
                lo = mid;
            } else {
                hi = mid - 1;
                sizeAbove = size;
            }
        }
    }
    if (lo == r.diameter) sizeAbove = 0;  // nothing is at distance > diameter
    r.witness = makePermutation(dm, std::move(best));
    r.value = lo;
    r.isAntipodal = r.value == r.diameter;
    r.matchingSizeAboveValue = sizeAbove;
    if (r.witness.displacement != r.value && n > 0) {
        throw ComputationError("matching witness displacement disagrees with the threshold");
    }
    return r;
}

struct AntipodalResult {
    bool exists = false;
    std::optional<VertexPermutation> witness;
};

// Bacher's criterion in matching form: an antipodal map exists iff the
// "distance equals diameter" bipartite graph has a perfect matching.
inline AntipodalResult hasAntipodalMap(const Graph& g, const DistanceMatrix& dm) {
    if (dm.vertexCount() != g.vertexCount()) throw ValidationError("distance matrix does not match graph");
    AntipodalResult r;
    if (auto perm = permutationWithDisplacementAtLeast(dm, dm.diameter())) {
        r.exists = true;
        r.witness = makePermutation(dm, std::move(*perm));
    }
    return r;
}

// floor(log_{k-1}(n / 6)) computed exactly: the largest r with 6 (k-1)^r <= n.
inline int logDisplacementThreshold(int n, int k) {
    if (k < 3) throw ValidationError("logarithmic displacement needs maximal degree >= 3");
    if (6 > n) return 0;
    int r = 0;
    long long power = 6;
    while (power * (k - 1) <= n) {
        power *= (k - 1);
        ++r;
    }
    return r;
}

// Cyclic permutation along a Hamiltonian circuit of the far graph
// {x ~ y : d(x, y) >= t}, with t = floor(log_{k-1}(n/6)) (k the maximal
// degree) unless a threshold is given. Throws DiracConditionFailed when the
// far graph has a vertex of degree < n/2.
inline VertexPermutation diracDisplacementPermutation(const Graph& g, const DistanceMatrix& dm,
                                                      std::optional<int> threshold = std::nullopt) {
    const int n = g.vertexCount();
    int t;
    if (threshold) {
        t = *threshold;
    } else {
        int k = 0;
        for (Vertex v = 0; v < n; ++v) k = std::max(k, g.degree(v));
        t = logDisplacementThreshold(n, k);
    }
    t = std::max(t, 1);
    auto circuit = diracHamiltonianCycle(n, [&](int x, int y) { return x != y && dm(x, y) >= t; });
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) image[circuit[i]] = circuit[(i + 1) % n];
    auto perm = makePermutation(dm, std::move(image));
    if (perm.displacement < t) throw ComputationError("Hamiltonian circuit uses a pair below the threshold");
    return perm;
}

}  // namespace gdist
