#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdist/generators.hpp"
#include "gdist/graph.hpp"
#include "gdist/linalg.hpp"
#include "gdist/random.hpp"

namespace gdist {

enum class SpectralKind { Exact, VariationalUpper, CharacterUpper };

inline const char* toString(SpectralKind k) {
    switch (k) {
        case SpectralKind::Exact: return "exact";
        case SpectralKind::VariationalUpper: return "variational-upper";
        case SpectralKind::CharacterUpper: return "character-upper";
    }
    return "?";
}

struct SpectralResult {
    double p = 2.0;
    double value = 0.0;
    SpectralKind kind = SpectralKind::Exact;
    std::vector<double> witness;  // empty for character bounds
    bool iterationCapped = false;
    std::string method;
};

// Minimizer of sum_i |v_i - a|^p over a. Mean for p = 2, lower median for
// p = 1, derivative bisection otherwise.
inline double pCenter(std::span<const double> values, double p) {
    if (values.empty()) throw ValidationError("pCenter of an empty list");
    if (!(p >= 1.0)) throw ValidationError("pCenter needs p >= 1");
    if (p == 2.0) {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    if (p == 1.0) {
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        return sorted[(sorted.size() - 1) / 2];
    }
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn, hi = *mx;
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    // h(a) = sum sign(v - a) |v - a|^(p-1) is decreasing in a.
    auto h = [&](double a) {
        double s = 0.0;
        for (double v : values) {
            const double d = v - a;
            s += (d >= 0 ? 1.0 : -1.0) * std::pow(std::abs(d), p - 1.0);
        }
        return s;
    };
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double pDeviation(std::span<const double> values, double center, double p) {
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v - center), p);
    return s;
}

// Sum over edges of |f(x) - f(y)|^p: the half in the ordered double sum
// cancels the double count.
inline double edgeEnergy(const Graph& g, std::span<const double> f, double p) {
    double s = 0.0;
    for (auto [u, v] : g.edges()) s += std::pow(std::abs(f[u] - f[v]), p);
    return s;
}

inline double rayleighQuotient(const Graph& g, std::span<const double> f, double p) {
    if (static_cast<int>(f.size()) != g.vertexCount()) {
        throw ValidationError("function length does not match vertex count");
    }
    if (f.empty() || std::all_of(f.begin(), f.end(), [&](double x) { return x == f[0]; })) {
        throw ValidationError("Rayleigh quotient of a constant function");
    }
    const double den = pDeviation(f, pCenter(f, p), p);
    if (!(den > 0.0)) throw ValidationError("Rayleigh quotient denominator vanishes");
    return edgeEnergy(g, f, p) / den;
}

struct SpectralOptions {
    int denseLimit = static_cast<int>(envBudget("GDIST_DENSE_BUDGET", 512));
    int lanczosMaxSteps = 800;
    double lanczosResidualTol = 1e-10;
    std::uint64_t lanczosSeed = 12345;
};

inline Matrix laplacian(const Graph& g) {
    Matrix l = Matrix::Zero(g.vertexCount(), g.vertexCount());
    for (Vertex v = 0; v < g.vertexCount(); ++v) l(v, v) = g.degree(v);
    for (auto [u, v] : g.edges()) {
        l(u, v) = -1.0;
        l(v, u) = -1.0;
    }
    return l;
}

namespace detail {

inline void applyLaplacian(const Graph& g, std::span<const double> x, std::span<double> y) {
    for (Vertex v = 0; v < g.vertexCount(); ++v) {
        double s = g.degree(v) * x[v];
        for (Vertex w : g.neighbors(v)) s -= x[w];
        y[v] = s;
    }
}

// Lanczos with full reorthogonalization on the complement of the constants.
// The smallest Ritz pair approximates lambda_1; the residual norm bounds the
// distance from the Ritz value to the spectrum.
inline SpectralResult lanczosGap(const Graph& g, const SpectralOptions& opt) {
    const int n = g.vertexCount();
    auto deflate = [&](std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v;
        s /= n;
        for (double& v : x) v -= s;
    };
    Rng rng(opt.lanczosSeed);
    std::vector<double> q(static_cast<std::size_t>(n));
    for (double& v : q) v = rng.normal();
    deflate(q);
    {
        const double nq = norm2(q);
        for (double& v : q) v /= nq;
    }
    std::vector<std::vector<double>> basis{q};
    std::vector<double> alpha, beta;
    std::vector<double> w(static_cast<std::size_t>(n));
    const int maxSteps = std::min(opt.lanczosMaxSteps, n - 1);
    double bestResidual = std::numeric_limits<double>::infinity();
    for (int j = 0; j < maxSteps; ++j) {
        applyLaplacian(g, basis[j], w);
        const double a = dot(w, basis[j]);
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            deflate(w);
            for (const auto& b : basis) {
                const double c = dot(w, b);
                for (int i = 0; i < n; ++i) w[i] -= c * b[i];
            }
        }
        const double b = norm2(w);
        const bool last = j + 1 == maxSteps || b < 1e-12;
        if ((j + 1) % 20 == 0 || last) {
            auto eig = tridiagonalEigen(alpha, beta);
            const double residual = b * std::abs(eig.vectors[0].back());
            bestResidual = residual;
            const double scale = std::max(1.0, std::abs(eig.values.back()));
            if (residual < opt.lanczosResidualTol * scale || last) {
                std::vector<double> f(static_cast<std::size_t>(n), 0.0);
                for (std::size_t k = 0; k < basis.size(); ++k)
                    for (int i = 0; i < n; ++i) f[i] += eig.vectors[0][k] * basis[k][i];
                SpectralResult r;
                r.p = 2.0;
                r.kind = SpectralKind::Exact;
                r.method = "lanczos";
                r.value = rayleighQuotient(g, f, 2.0);
                r.witness = std::move(f);
                r.iterationCapped = !(residual < opt.lanczosResidualTol * scale);
                if (r.iterationCapped) {
                    throw ComputationError("Lanczos did not reach residual tolerance (residual " +
                                           std::to_string(bestResidual) + ")");
                }
                return r;
            }
        }
        beta.push_back(b);
        for (double& v : w) v /= b;
        basis.push_back(w);
    }
    throw ComputationError("Lanczos exhausted its step budget");
}

}  // namespace detail

// Second-smallest Laplacian eigenvalue. Dense solver up to denseLimit
// vertices, Lanczos with full reorthogonalization above it.
inline SpectralResult spectralGapExact(const Graph& g, const SpectralOptions& opt = {}) {
    const int n = g.vertexCount();
    if (n < 2) throw ValidationError("spectral gap needs at least two vertices");
    if (!isConnected(g)) throw ValidationError("spectral gap needs a connected graph");
    if (n > vertexBudget()) throw BudgetExceeded("graph exceeds the vertex budget");
    if (n > opt.denseLimit) return detail::lanczosGap(g, opt);
    auto eig = symmetricEigen(laplacian(g));
    SpectralResult r;
    r.p = 2.0;
    r.kind = SpectralKind::Exact;
    r.method = "dense";
    r.witness = eig.vectors[1];
    r.value = rayleighQuotient(g, r.witness, 2.0);
    return r;
}

struct VariationalOptions {
    int restarts = 16;
    std::uint64_t seed = 1;
    int maxIterations = 10000;
    double relTol = 1e-10;
    SpectralOptions exact;
};

namespace detail {

// Shift by the p-center and scale to unit p-norm.
inline void normalizeRepresentative(std::vector<double>& f, double p) {
    const double c = pCenter(f, p);
    for (double& v : f) v -= c;
    const double s = std::pow(pDeviation(f, 0.0, p), 1.0 / p);
    if (s > 0) {
        for (double& v : f) v /= s;
    }
}

inline double signedPow(double a, double e) { return (a >= 0 ? 1.0 : -1.0) * std::pow(std::abs(a), e); }

// Gradient of N/D with N the edge energy and D the p-deviation about the
// p-center (the center's own derivative drops out at the optimum).
inline std::vector<double> quotientGradient(const Graph& g, std::span<const double> f, double p, double q) {
    const int n = g.vertexCount();
    const double c = pCenter(f, p);
    const double den = pDeviation(f, c, p);
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
    for (auto [u, v] : g.edges()) {
        const double t = p * signedPow(f[u] - f[v], p - 1.0);
        grad[u] += t;
        grad[v] -= t;
    }
    for (int x = 0; x < n; ++x) grad[x] = (grad[x] - q * p * signedPow(f[x] - c, p - 1.0)) / den;
    return grad;
}

struct DescentOutcome {
    std::vector<double> f;
    double value;
    bool capped;
};

inline DescentOutcome descend(const Graph& g, std::vector<double> f, double p, const VariationalOptions& opt) {
    normalizeRepresentative(f, p);
    double q = rayleighQuotient(g, f, p);
    double step = 1.0;
    for (int it = 0; it < opt.maxIterations; ++it) {
        auto grad = quotientGradient(g, f, p, q);
        bool improved = false;
        while (step > 1e-20) {
            std::vector<double> cand(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) cand[i] = f[i] - step * grad[i];
            if (std::all_of(cand.begin(), cand.end(), [&](double x) { return x == cand[0]; })) {
                step *= 0.5;
                continue;
            }
            normalizeRepresentative(cand, p);
            const double qc = rayleighQuotient(g, cand, p);
            if (qc < q) {
                const double rel = (q - qc) / std::max(q, 1e-300);
                f = std::move(cand);
                q = qc;
                step *= 2.0;
                improved = true;
                if (rel < opt.relTol) return {std::move(f), q, false};
                break;
            }
            step *= 0.5;
        }
        if (!improved) return {std::move(f), q, false};
    }
    return {std::move(f), q, true};
}

// Sublevel sets of the p = 2 eigenvector, scored as indicator functions:
// cut(S) / min(|S|, |V \ S|).
inline SpectralResult sweepCut(const Graph& g, const SpectralOptions& opt) {
    const int n = g.vertexCount();
    auto fiedler = spectralGapExact(g, opt).witness;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fiedler[a] < fiedler[b]; });
    std::vector<char> inS(static_cast<std::size_t>(n), 0);
    long long cut = 0;
    double best = std::numeric_limits<double>::infinity();
    int bestSize = 1;
    for (int k = 0; k + 1 < n; ++k) {
        const int v = order[k];
        for (Vertex w : g.neighbors(v)) cut += inS[w] ? -1 : 1;
        inS[v] = 1;
        const int size = k + 1;
        const double val = static_cast<double>(cut) / std::min(size, n - size);
        if (val < best) {
            best = val;
            bestSize = size;
        }
    }
    SpectralResult r;
    r.p = 1.0;
    r.kind = SpectralKind::VariationalUpper;
    r.method = "sweep-cut";
    r.witness.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < bestSize; ++k) r.witness[order[k]] = 1.0;
    r.value = rayleighQuotient(g, r.witness, 1.0);
    return r;
}

}  // namespace detail

// Upper bound on lambda_1^(p) by multi-start descent on the Rayleigh
// quotient. Starts: the p = 2 eigenvector, then `restarts` Gaussian vectors.
inline SpectralResult spectralGapVariational(const Graph& g, double p, const VariationalOptions& opt = {}) {
    if (!(p >= 1.0)) throw ValidationError("variational gap needs p >= 1");
    if (!isConnected(g)) throw ValidationError("spectral gap needs a connected graph");
    if (g.vertexCount() < 2) throw ValidationError("spectral gap needs at least two vertices");
    if (p == 1.0) return detail::sweepCut(g, opt.exact);

    const int n = g.vertexCount();
    std::vector<std::vector<double>> starts{spectralGapExact(g, opt.exact).witness};
    Rng rng(opt.seed);
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<double> f(static_cast<std::size_t>(n));
        for (double& v : f) v = rng.normal();
        starts.push_back(std::move(f));
    }
    SpectralResult best;
    best.p = p;
    best.kind = SpectralKind::VariationalUpper;
    best.method = "projected-descent";
    best.value = std::numeric_limits<double>::infinity();
    for (auto& s : starts) {
        auto out = detail::descend(g, std::move(s), p, opt);
        if (out.value < best.value) {
            best.value = out.value;
            best.witness = std::move(out.f);
            best.iterationCapped = out.capped;
        }
    }
    best.value = rayleighQuotient(g, best.witness, p);
    return best;
}

// A 1-dimensional character given by its values on the generators, in the
// order of CayleySpec::generators.
struct Character {
    std::vector<std::complex<double>> values;
};

struct CharacterBound {
    double value = 0.0;
    bool trivial = false;
};

// Re sum_{s in S} (1 - chi(s)) over the distinct generators: an eigenvalue of
// the Laplacian of the Cayley graph, hence an upper bound on lambda_1^(2)
// when chi is non-trivial. The extension of chi along a BFS tree of the
// group is checked against every Cayley edge, which verifies that chi is a
// homomorphism.
template <FiniteGroup G>
CharacterBound characterEigenvalue(const CayleySpec<G>& spec, const Character& chi, long budget = vertexBudget()) {
    const auto& grp = spec.group;
    const auto& gens = spec.generators;
    if (chi.values.size() != gens.size()) throw ValidationError("character needs one value per generator");
    constexpr double tol = 1e-9;
    std::unordered_map<std::string, std::complex<double>> onGen;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (std::abs(std::abs(chi.values[i]) - 1.0) > tol) throw ValidationError("character value is not unimodular");
        auto [it, inserted] = onGen.emplace(grp.encode(gens[i]), chi.values[i]);
        if (!inserted && std::abs(it->second - chi.values[i]) > tol) {
            throw ValidationError("character assigns two values to the same generator");
        }
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto it = onGen.find(grp.encode(grp.invert(gens[i])));
        if (it == onGen.end()) throw ValidationError("generating set is not symmetric");
        if (std::abs(it->second - std::conj(chi.values[i])) > tol) {
            throw ValidationError("character violates chi(s^-1) = conj(chi(s))");
        }
    }

    using Element = typename G::Element;
    std::vector<Element> elements{grp.identity()};
    std::vector<std::complex<double>> value{1.0};
    std::unordered_map<std::string, int> index{{grp.encode(grp.identity()), 0}};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        const Element g = elements[head];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Element h = grp.multiply(g, gens[i]);
            const auto expected = value[head] * chi.values[i];
            auto [it, inserted] = index.emplace(grp.encode(h), static_cast<int>(elements.size()));
            if (inserted) {
                if (static_cast<long>(elements.size()) >= budget) throw BudgetExceeded("character check exceeds budget");
                elements.push_back(std::move(h));
                value.push_back(expected);
            } else if (std::abs(value[it->second] - expected) > 1e-7) {
                throw ValidationError("values do not extend to a homomorphism (" + spec.family + ")");
            }
        }
    }

    CharacterBound out;
    out.trivial = std::all_of(onGen.begin(), onGen.end(), [&](const auto& kv) { return std::abs(kv.second - 1.0) <= tol; });
    double s = 0.0;
    for (const auto& kv : onGen) s += 1.0 - kv.second.real();
    out.value = out.trivial ? 0.0 : s;
    return out;
}

}  // namespace gdist
