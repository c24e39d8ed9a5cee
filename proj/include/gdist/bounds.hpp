#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdist/clique.hpp"
#include "gdist/displacement.hpp"
#include "gdist/embeddings.hpp"
#include "gdist/graph.hpp"
#include "gdist/spectral.hpp"

namespace gdist {

struct BoundEntry {
    std::string name;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> ingredients;
    bool heuristic = false;
    std::string note;
};

struct BoundReport {
    std::string graphName;
    double p = 2.0;
    std::vector<BoundEntry> entries;
    std::optional<double> exactC2;
    std::optional<double> exactC2Lower;
    std::vector<std::string> notes;  // bounds skipped as not applicable, oracle status
};

// D (lambda / (k 2^(p-1)))^(1/p)
inline double spectralDisplacementFormula(double displacement, double lambda, double k, double p) {
    return displacement * std::pow(lambda / (k * std::pow(2.0, p - 1.0)), 1.0 / p);
}

namespace detail {
inline void requireMatchingP(const SpectralResult& s, double p) {
    if (s.p != p) throw ValidationError("spectral result was computed for a different p");
    if (!(s.value > 0.0)) throw ValidationError("spectral gap must be positive");
}
}  // namespace detail

inline BoundEntry mainBound(const Graph& g, const SpectralResult& spectral, const DisplacementResult& disp,
                            double p) {
    detail::requireMatchingP(spectral, p);
    const double k = 2.0 * static_cast<double>(g.edgeCount()) / g.vertexCount();
    BoundEntry e;
    e.name = "main";
    e.value = spectralDisplacementFormula(disp.value, spectral.value, k, p);
    e.ingredients = {{"D", disp.value}, {"lambda", spectral.value}, {"k", k}, {"p", p}};
    e.heuristic = spectral.kind != SpectralKind::Exact;
    if (e.heuristic) e.note = std::string("lambda is ") + toString(spectral.kind);
    return e;
}

inline BoundEntry vertexTransitiveBound(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral,
                                        double p) {
    if (!g.vertexTransitive()) throw ValidationError("graph is not known to be vertex-transitive");
    detail::requireMatchingP(spectral, p);
    const double k = 2.0 * static_cast<double>(g.edgeCount()) / g.vertexCount();
    BoundEntry e;
    e.name = "vertex-transitive";
    e.value = spectralDisplacementFormula(dm.diameter(), spectral.value, k, p);
    e.ingredients = {{"diam", dm.diameter()}, {"lambda", spectral.value}, {"k", k}, {"p", p}};
    e.heuristic = spectral.kind != SpectralKind::Exact;
    if (e.heuristic) e.note = std::string("lambda is ") + toString(spectral.kind);
    return e;
}

struct VolumeDistribution {
    double epsilon = 0.0;
    double rho = 0.0;
    std::vector<int> witnessSubset;
    bool exact = true;
};

inline int volumeTarget(int n, double epsilon) {
    // ceil(eps n) with a guard against eps n landing just above an integer.
    const double t = epsilon * n;
    const double r = std::round(t);
    return std::abs(t - r) < 1e-9 ? static_cast<int>(r) : static_cast<int>(std::ceil(t));
}

inline int subsetDiameter(const DistanceMatrix& dm, const std::vector<int>& s) {
    int best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, dm(s[i], s[j]));
    return best;
}

struct VolumeOptions {
    int exactLimit = 64;
    long cliqueNodeCap = 20'000'000;
    int heuristicCenters = 64;
    std::uint64_t seed = 1;
};

namespace detail {

// Best subset among the m nearest vertices to sampled centres.
inline std::vector<int> ballHeuristic(const DistanceMatrix& dm, int m, const VolumeOptions& opt) {
    const int n = dm.vertexCount();
    std::vector<int> centres(static_cast<std::size_t>(n));
    std::iota(centres.begin(), centres.end(), 0);
    if (n > opt.heuristicCenters) {
        Rng rng(opt.seed);
        rng.shuffle(centres);
        centres.resize(static_cast<std::size_t>(opt.heuristicCenters));
        std::sort(centres.begin(), centres.end());
    }
    std::vector<int> best;
    int bestDiam = std::numeric_limits<int>::max();
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int c : centres) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dm(c, a) < dm(c, b); });
        std::vector<int> ball(order.begin(), order.begin() + m);
        const int d = subsetDiameter(dm, ball);
        if (d < bestDiam) {
            bestDiam = d;
            best = std::move(ball);
        }
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace detail

// rho_eps = min diam(A) / diam(X) over |A| >= eps |X|. Exact up to
// exactLimit vertices (smallest threshold delta whose graph {d <= delta}
// has a clique of size ceil(eps n)); ball heuristic above, which only gives
// an upper estimate.
inline VolumeDistribution volumeDistribution(const DistanceMatrix& dm, double epsilon, const VolumeOptions& opt = {}) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    const int n = dm.vertexCount();
    if (n < 2 || dm.diameter() == 0) throw ValidationError("volume distribution needs at least two vertices");
    VolumeDistribution out;
    out.epsilon = epsilon;
    const int m = volumeTarget(n, epsilon);
    if (m <= 1) {
        out.witnessSubset = {0};
        return out;
    }
    std::vector<int> subset;
    if (n <= std::min(opt.exactLimit, 64)) {
        auto cliqueAt = [&](int delta, bool& exhausted) -> std::optional<VertexMask> {
            std::vector<VertexMask> adj(static_cast<std::size_t>(n), 0);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (x != y && dm(x, y) <= delta) adj[x] |= VertexMask{1} << y;
            auto res = findClique(adj, m, opt.cliqueNodeCap);
            exhausted = exhausted && res.exhausted;
            return res.clique;
        };
        bool exhausted = true;
        int lo = 1, hi = dm.diameter();  // the whole vertex set works at diam
        VertexMask best = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
        while (lo < hi) {
            const int mid = lo + (hi - lo) / 2;
            if (auto c = cliqueAt(mid, exhausted)) {
                best = *c;
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if (exhausted) {
            for (int v = 0; v < n && static_cast<int>(subset.size()) < m; ++v)
                if (best >> v & 1) subset.push_back(v);
        }
    }
    if (subset.empty()) {
        subset = detail::ballHeuristic(dm, m, opt);
        out.exact = false;
    }
    out.witnessSubset = std::move(subset);
    out.rho = static_cast<double>(subsetDiameter(dm, out.witnessSubset)) / dm.diameter();
    return out;
}

inline const std::vector<double>& gnEpsilonGrid() {
    static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return grid;
}

// (1-eps)^(1/p) rho_eps / 2^(1/p) * diam * (lambda / (k 2^(p-1)))^(1/p)
inline BoundEntry gnBound(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral, double p,
                          const VolumeDistribution& vol) {
    detail::requireMatchingP(spectral, p);
    const double k = 2.0 * static_cast<double>(g.edgeCount()) / g.vertexCount();
    BoundEntry e;
    e.name = "gn";
    e.value = std::pow(1.0 - vol.epsilon, 1.0 / p) * vol.rho / std::pow(2.0, 1.0 / p) *
              spectralDisplacementFormula(dm.diameter(), spectral.value, k, p);
    e.ingredients = {{"eps", vol.epsilon}, {"rho", vol.rho}, {"diam", dm.diameter()},
                     {"lambda", spectral.value}, {"k", k}, {"p", p}};
    e.heuristic = spectral.kind != SpectralKind::Exact || !vol.exact;
    if (!vol.exact) e.note = "rho from ball heuristic";
    return e;
}

inline BoundEntry gnBound(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral, double p,
                          double epsilon, const VolumeOptions& opt = {}) {
    return gnBound(g, dm, spectral, p, volumeDistribution(dm, epsilon, opt));
}

struct GnSweep {
    BoundEntry best;
    std::vector<BoundEntry> all;
};

inline GnSweep gnSweep(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral, double p,
                       const VolumeOptions& opt = {}) {
    GnSweep s;
    for (double eps : gnEpsilonGrid()) {
        s.all.push_back(gnBound(g, dm, spectral, p, eps, opt));
        if (s.all.size() == 1 || s.all.back().value > s.best.value) s.best = s.all.back();
    }
    return s;
}

// Sum of d(x, y)^2 over ordered pairs.
inline long long sumSquaredDistances(const DistanceMatrix& dm) {
    long long s = 0;
    for (int x = 0; x < dm.vertexCount(); ++x)
        for (int v : dm.row(x)) s += static_cast<long long>(v) * v;
    return s;
}

inline Rational avgSquaredDistance(const DistanceMatrix& dm) {
    const long long n = dm.vertexCount();
    if (n < 2) throw ValidationError("average squared distance needs at least two vertices");
    return makeRational(sumSquaredDistances(dm), n * (n - 1));
}

inline int regularDegree(const Graph& g) {
    const int k = g.degree(0);
    for (Vertex v = 1; v < g.vertexCount(); ++v) {
        if (g.degree(v) != k) throw ValidationError("bound needs a regular graph");
    }
    return k;
}

// sqrt((n-1) lambda / (n k) avg(d^2))
inline BoundEntry nrBound(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral) {
    detail::requireMatchingP(spectral, 2.0);
    const int k = regularDegree(g);
    const double n = g.vertexCount();
    const Rational avg = avgSquaredDistance(dm);
    BoundEntry e;
    e.name = "nr";
    e.value = std::sqrt((n - 1.0) * spectral.value / (n * k) * avg.value());
    e.ingredients = {{"avg_d2", avg.value()}, {"lambda", spectral.value}, {"k", k}, {"n", n}};
    e.heuristic = spectral.kind != SpectralKind::Exact;
    return e;
}

// C g / sqrt(min(g, k / lambda)); the constant C is unknown, so the entry is
// only meaningful up to scale.
inline BoundEntry lmnBound(const Graph& g, const SpectralResult& spectral, double constant = 1.0) {
    detail::requireMatchingP(spectral, 2.0);
    const int k = regularDegree(g);
    const auto gi = girth(g);
    if (!gi) throw ValidationError("girth bound needs a graph with a cycle");
    BoundEntry e;
    e.name = "lmn";
    e.value = constant * *gi / std::sqrt(std::min<double>(*gi, k / spectral.value));
    e.ingredients = {{"C", constant}, {"girth", *gi}, {"k", k}, {"lambda", spectral.value}};
    e.heuristic = true;
    e.note = "unknown universal constant";
    return e;
}

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
    bool holds(double relTol = 0.0) const { return lhs <= rhs + relTol * std::max(std::abs(rhs), 1.0); }
};

// diam <= 2 sqrt(2k / lambda) log2 |X| with k the maximal degree.
inline InequalityCheck alonMilmanCheck(const Graph& g, const DistanceMatrix& dm, const SpectralResult& spectral) {
    detail::requireMatchingP(spectral, 2.0);
    int k = 0;
    for (Vertex v = 0; v < g.vertexCount(); ++v) k = std::max(k, g.degree(v));
    return {static_cast<double>(dm.diameter()),
            2.0 * std::sqrt(2.0 * k / spectral.value) * std::log2(static_cast<double>(g.vertexCount()))};
}

struct PoincareReport {
    InequalityCheck poincare;      // (1/(n 2^p)) sum |G x - G a x|^p <= k/(2|E| lambda) sum_e |dG|^p
    InequalityCheck permutation;   // rho(a) (lambda/(k 2^(p-1)))^(1/p) <= dist(G)
    InequalityCheck displacement;  // sum |F x - F a x|^p <= 2^p sum |F x|^p
    bool centeredInternally = false;
};

inline double pPowerNorm(std::span<const double> a, std::span<const double> b, double p) {
    const double d = pDistance(a, b, p);
    return std::pow(d, p);
}

// Evaluates the Poincare-type inequality and the per-permutation distortion
// bound for one embedding and one permutation. The embedding is centered
// here if it is not already.
inline PoincareReport poincareCheck(const Graph& g, const DistanceMatrix& dm, const Embedding& e,
                                    const VertexPermutation& alpha, const SpectralResult& spectral, double p) {
    detail::requireMatchingP(spectral, p);
    const int n = g.vertexCount();
    validateEmbedding(e, n);
    if (e.p != p) throw ValidationError("embedding exponent differs from p");
    if (static_cast<int>(alpha.image.size()) != n) throw ValidationError("permutation size differs from graph");
    PoincareReport r;
    Embedding c = centered(e);
    for (int x = 0; x < n && !r.centeredInternally; ++x)
        for (int i = 0; i < e.dim; ++i)
            if (std::abs(c.vectors[x][i] - e.vectors[x][i]) > 1e-12 * (1.0 + std::abs(e.vectors[x][i]))) {
                r.centeredInternally = true;
                break;
            }
    const std::vector<double> zero(static_cast<std::size_t>(e.dim), 0.0);
    double moved = 0.0, mass = 0.0, energy = 0.0;
    for (int x = 0; x < n; ++x) {
        moved += pPowerNorm(c.vectors[x], c.vectors[alpha.image[x]], p);
        mass += pPowerNorm(c.vectors[x], zero, p);
    }
    for (const auto& [x, y] : g.edges()) energy += pPowerNorm(c.vectors[x], c.vectors[y], p);
    const double edges = static_cast<double>(g.edgeCount());
    const double k = 2.0 * edges / n;
    r.poincare = {moved / (n * std::pow(2.0, p)), k / (2.0 * edges * spectral.value) * energy};
    r.displacement = {moved, std::pow(2.0, p) * mass};
    const int rho = displacementOfPermutation(dm, alpha.image);
    r.permutation = {spectralDisplacementFormula(rho, spectral.value, k, p), distortion(g, dm, c).distortion};
    return r;
}

struct FamilyMember {
    std::string name;
    double diameter = 0.0;
    double lowerBound = 0.0;
    bool heuristic = false;
};

struct CompressionFit {
    std::vector<FamilyMember> family;
    double eta = 0.0;
    double K = 0.0;
    double alphaUpper = 1.0;
    bool heuristic = false;
};

// Least-squares slope eta of log(bound) against log(diam), then K is the
// largest constant with bound >= K diam^eta on every member.
inline CompressionFit compressionFit(std::vector<FamilyMember> family) {
    if (family.size() < 3) throw ValidationError("compression fit needs at least three family members");
    std::vector<double> lx, ly;
    for (const auto& m : family) {
        if (!(m.diameter >= 1.0) || !(m.lowerBound > 0.0)) {
            throw ValidationError("family member " + m.name + " needs diameter >= 1 and a positive bound");
        }
        lx.push_back(std::log(m.diameter));
        ly.push_back(std::log(m.lowerBound));
    }
    const auto [mn, mx] = std::minmax_element(lx.begin(), lx.end());
    if (*mx - *mn < 1e-12) throw ValidationError("family diameters do not grow");
    const double n = static_cast<double>(lx.size());
    const double mxv = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double myv = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mxv) * (ly[i] - myv);
        sxx += (lx[i] - mxv) * (lx[i] - mxv);
    }
    CompressionFit fit;
    fit.eta = sxy / sxx;
    fit.K = std::numeric_limits<double>::infinity();
    for (const auto& m : family) {
        fit.K = std::min(fit.K, m.lowerBound / std::pow(m.diameter, fit.eta));
        fit.heuristic = fit.heuristic || m.heuristic;
    }
    fit.alphaUpper = 1.0 - fit.eta;
    fit.family = std::move(family);
    return fit;
}

// Disjoint union of finite graphs; points in different blocks are at
// distance max of the two diameters.
class BoxSpace {
public:
    explicit BoxSpace(std::vector<Graph> blocks) : blocks_(std::move(blocks)) {
        for (const auto& b : blocks_) dms_.push_back(allPairsDistances(b));
    }
    int blockCount() const { return static_cast<int>(blocks_.size()); }
    const Graph& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }

    int distance(int i, int x, int j, int y) const {
        check(i, x);
        check(j, y);
        if (i == j) return dms_[i](x, y);
        return std::max(dms_[i].diameter(), dms_[j].diameter());
    }

private:
    void check(int i, int x) const {
        if (i < 0 || i >= blockCount()) throw ValidationError("block index out of range");
        if (x < 0 || x >= blocks_[i].vertexCount()) throw ValidationError("vertex index out of range");
    }
    std::vector<Graph> blocks_;
    std::vector<DistanceMatrix> dms_;
};

}  // namespace gdist
