#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gdist/bounds.hpp"
#include "gdist/generators.hpp"

namespace gdist {
namespace {

using std::numbers::pi;

struct Prepared {
    Graph g;
    DistanceMatrix dm;
    SpectralResult spectral;
    DisplacementResult disp;
};

Prepared prepare(Graph g) {
    auto dm = allPairsDistances(g);
    auto sp = spectralGapExact(g);
    auto disp = maxDisplacement(g, dm);
    return {std::move(g), std::move(dm), std::move(sp), std::move(disp)};
}

TEST(MainBound, SharpCases) {
    auto c6 = prepare(cycle(6));
    EXPECT_NEAR(mainBound(c6.g, c6.spectral, c6.disp, 2.0).value, 1.5, 1e-12);
    auto h4 = prepare(hypercube(4));
    EXPECT_NEAR(mainBound(h4.g, h4.spectral, h4.disp, 2.0).value, 2.0, 1e-12);
    for (int n : {4, 8, 10, 16}) {
        auto c = prepare(cycle(n));
        EXPECT_NEAR(mainBound(c.g, c.spectral, c.disp, 2.0).value, n / 2.0 * std::sin(pi / n), 1e-9);
    }
}

TEST(MainBound, TorusValue) {
    auto t = prepare(torus({4, 8}));
    auto e = mainBound(t.g, t.spectral, t.disp, 2.0);
    EXPECT_NEAR(e.value, 6.0 * std::sin(pi / 8) / std::sqrt(2.0), 1e-9);
    EXPECT_FALSE(e.heuristic);
}

TEST(MainBound, FlagsNonExactSpectrum) {
    auto c = prepare(cycle(6));
    auto var = spectralGapVariational(c.g, 3.0);
    auto e = mainBound(c.g, var, c.disp, 3.0);
    EXPECT_TRUE(e.heuristic);
    EXPECT_THROW(mainBound(c.g, var, c.disp, 2.0), ValidationError);
}

TEST(VertexTransitiveBound, EqualsMainOnCayleyGraphs) {
    for (auto g : {cycle(9), hypercube(3), torus({3, 5}), lamplighter(3, 1), slnq(2, 3)}) {
        auto p = prepare(std::move(g));
        EXPECT_DOUBLE_EQ(vertexTransitiveBound(p.g, p.dm, p.spectral, 2.0).value,
                         mainBound(p.g, p.spectral, p.disp, 2.0).value)
            << p.g.name();
    }
    auto path4 = prepare(path(4));
    EXPECT_THROW(vertexTransitiveBound(path4.g, path4.dm, path4.spectral, 2.0), ValidationError);
}

TEST(VertexTransitiveBound, LamplighterStaysBounded) {
    for (int n = 3; n <= 5; ++n) {
        auto p = prepare(lamplighter(n, 1));
        EXPECT_LE(p.dm.diameter(), 2 * n + 2);
        EXPECT_LT(vertexTransitiveBound(p.g, p.dm, p.spectral, 2.0).value, 3.7) << n;
    }
}

// Minimum relative diameter over all subsets of size m, by enumeration.
double bruteRho(const DistanceMatrix& dm, int m) {
    const int n = dm.vertexCount();
    int best = dm.diameter();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        int d = 0;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if ((mask >> x & 1) && (mask >> y & 1)) d = std::max(d, dm(x, y));
        best = std::min(best, d);
    }
    return static_cast<double>(best) / dm.diameter();
}

TEST(VolumeDistribution, Examples) {
    auto c4 = allPairsDistances(cycle(4));
    auto v = volumeDistribution(c4, 0.5);
    EXPECT_DOUBLE_EQ(v.rho, 0.5);
    EXPECT_TRUE(v.exact);
    EXPECT_EQ(v.witnessSubset.size(), 2u);
    EXPECT_DOUBLE_EQ(volumeDistribution(c4, 0.2).rho, 0.0);
    EXPECT_DOUBLE_EQ(volumeDistribution(c4, 0.25).rho, 0.0);
    EXPECT_DOUBLE_EQ(volumeDistribution(allPairsDistances(hypercube(2)), 0.75).rho, 1.0);
    EXPECT_THROW(volumeDistribution(c4, 0.0), ValidationError);
    EXPECT_THROW(volumeDistribution(c4, 1.0), ValidationError);
}

TEST(VolumeDistribution, MatchesEnumeration) {
    for (const auto& g : {cycle(7), cycle(10), hypercube(3), path(9), torus({3, 4}), randomRegular(12, 3, 6),
                          prism(3)}) {
        auto dm = allPairsDistances(g);
        for (double eps : {0.1, 0.25, 0.3, 0.5, 0.6, 0.75, 0.9}) {
            auto v = volumeDistribution(dm, eps);
            const int m = volumeTarget(g.vertexCount(), eps);
            EXPECT_DOUBLE_EQ(v.rho, bruteRho(dm, m)) << g.name() << " eps=" << eps;
            EXPECT_GE(static_cast<int>(v.witnessSubset.size()), m);
            EXPECT_DOUBLE_EQ(static_cast<double>(subsetDiameter(dm, v.witnessSubset)) / dm.diameter(), v.rho);
        }
    }
}

TEST(VolumeDistribution, HeuristicIsAnUpperEstimate) {
    auto dm = allPairsDistances(hypercube(5));
    VolumeOptions heur;
    heur.exactLimit = 0;
    for (double eps : {0.2, 0.5, 0.8}) {
        auto exact = volumeDistribution(dm, eps);
        auto h = volumeDistribution(dm, eps, heur);
        EXPECT_TRUE(exact.exact);
        EXPECT_FALSE(h.exact);
        EXPECT_GE(h.rho, exact.rho);
    }
}

TEST(GnBound, HexagonHalf) {
    auto c6 = prepare(cycle(6));
    auto vol = volumeDistribution(c6.dm, 0.5);
    EXPECT_NEAR(vol.rho, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(gnBound(c6.g, c6.dm, c6.spectral, 2.0, 0.5).value, 0.5, 1e-12);
}

TEST(GnBound, WeakerThanVertexTransitive) {
    for (auto g : {cycle(8), hypercube(4), torus({4, 6}), slnq(2, 3)}) {
        auto p = prepare(std::move(g));
        const double vt = vertexTransitiveBound(p.g, p.dm, p.spectral, 2.0).value;
        auto sweep = gnSweep(p.g, p.dm, p.spectral, 2.0);
        EXPECT_EQ(sweep.all.size(), gnEpsilonGrid().size());
        for (const auto& e : sweep.all) EXPECT_LT(e.value, vt) << p.g.name();
        EXPECT_LT(sweep.best.value, vt);
    }
}

TEST(GnBound, DegeneratesNearOne) {
    auto p = prepare(cycle(10));
    const double a = gnBound(p.g, p.dm, p.spectral, 2.0, 0.9).value;
    const double b = gnBound(p.g, p.dm, p.spectral, 2.0, 0.999).value;
    EXPECT_LT(b, a);
    EXPECT_LT(b, 0.05);
}

TEST(AvgSquaredDistance, ClosedForms) {
    EXPECT_EQ(sumSquaredDistances(allPairsDistances(cycle(4))), 24);
    EXPECT_EQ(avgSquaredDistance(allPairsDistances(cycle(4))), makeRational(2, 1));
    EXPECT_EQ(avgSquaredDistance(allPairsDistances(hypercube(2))), makeRational(2, 1));
    EXPECT_EQ(avgSquaredDistance(allPairsDistances(completeGraph(3))), makeRational(1, 1));
    for (int n : {4, 6, 8, 12}) {
        EXPECT_EQ(sumSquaredDistances(allPairsDistances(cycle(n))), 1LL * n * n * (n * n + 2) / 12) << n;
    }
    for (int d = 1; d <= 6; ++d) {
        long long s = 0, binom = 1;
        for (int j = 0; j <= d; ++j) {
            s += 1LL * j * j * binom;
            binom = binom * (d - j) / (j + 1);
        }
        EXPECT_EQ(avgSquaredDistance(allPairsDistances(hypercube(d))), makeRational(s, (1LL << d) - 1)) << d;
    }
}

TEST(NrBound, CyclesAndCubes) {
    auto c4 = prepare(cycle(4));
    EXPECT_NEAR(nrBound(c4.g, c4.dm, c4.spectral).value, std::sqrt(1.5), 1e-12);
    for (int n : {4, 6, 8, 10, 12, 16}) {
        auto c = prepare(cycle(n));
        const double nr = nrBound(c.g, c.dm, c.spectral).value;
        EXPECT_NEAR(nr, std::sqrt((n * n + 2.0) / 6.0) * std::sin(pi / n), 1e-9);
        EXPECT_LT(nr, mainBound(c.g, c.spectral, c.disp, 2.0).value);
    }
    for (int d = 2; d <= 6; ++d) {
        auto h = prepare(hypercube(d));
        EXPECT_LT(nrBound(h.g, h.dm, h.spectral).value, std::sqrt(static_cast<double>(d)));
    }
    auto p = prepare(path(4));
    EXPECT_THROW(nrBound(p.g, p.dm, p.spectral), ValidationError);
}

TEST(LmnBound, Values) {
    auto k4 = prepare(completeGraph(4));
    EXPECT_NEAR(lmnBound(k4.g, k4.spectral).value, 3.0 / std::sqrt(0.75), 1e-12);
    EXPECT_TRUE(lmnBound(k4.g, k4.spectral).heuristic);
    EXPECT_DOUBLE_EQ(lmnBound(k4.g, k4.spectral, 0.0).value, 0.0);
    for (int d = 2; d <= 9; ++d) {
        auto h = prepare(hypercube(d));
        EXPECT_NEAR(lmnBound(h.g, h.spectral).value, 4.0 / std::sqrt(std::min(4.0, d / 2.0)), 1e-9) << d;
    }
    auto tree = prepare(buildGraph(4, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_THROW(lmnBound(tree.g, tree.spectral), ValidationError);
}

TEST(AlonMilman, Examples) {
    auto c6 = prepare(cycle(6));
    auto a = alonMilmanCheck(c6.g, c6.dm, c6.spectral);
    EXPECT_DOUBLE_EQ(a.lhs, 3.0);
    EXPECT_NEAR(a.rhs, 4.0 * std::log2(6.0), 1e-9);
    EXPECT_TRUE(a.holds());
    auto h3 = prepare(hypercube(3));
    EXPECT_NEAR(alonMilmanCheck(h3.g, h3.dm, h3.spectral).rhs, 2.0 * std::sqrt(3.0) * 3.0, 1e-9);
    for (auto g : {path(10), cycle(31), randomRegular(40, 3, 2), torus({5, 7}), lamplighter(4, 1)}) {
        auto p = prepare(std::move(g));
        EXPECT_GE(alonMilmanCheck(p.g, p.dm, p.spectral).slack(), 0.0) << p.g.name();
    }
}

TEST(Poincare, RandomInstances) {
    Rng rng(77);
    for (auto g : {cycle(6), hypercube(3), completeGraph(5), randomRegular(20, 3, 13)}) {
        auto p = prepare(std::move(g));
        const int n = p.g.vertexCount();
        for (int t = 0; t < 200; ++t) {
            Embedding e{2.0, 3, {}};
            for (int x = 0; x < n; ++x) e.vectors.push_back({rng.normal(), rng.normal(), rng.normal() + 3.0});
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            auto alpha = makePermutation(p.dm, perm);
            auto r = poincareCheck(p.g, p.dm, e, alpha, p.spectral, 2.0);
            EXPECT_TRUE(r.centeredInternally);
            EXPECT_GE(r.poincare.slack(), -1e-9 * r.poincare.rhs);
            EXPECT_GE(r.permutation.slack(), -1e-9);
            EXPECT_GE(r.displacement.slack(), -1e-9 * r.displacement.rhs);
        }
    }
}

TEST(Poincare, IdentityAndSharpness) {
    auto p = prepare(cycle(8));
    std::vector<int> id(8);
    std::iota(id.begin(), id.end(), 0);
    auto r = poincareCheck(p.g, p.dm, ngonEmbedding(8), makePermutation(p.dm, id), p.spectral, 2.0);
    EXPECT_DOUBLE_EQ(r.poincare.lhs, 0.0);
    EXPECT_FALSE(r.centeredInternally);
    // The antipodal map and the n-gon make every inequality tight.
    auto anti = poincareCheck(p.g, p.dm, ngonEmbedding(8), p.disp.witness, p.spectral, 2.0);
    EXPECT_NEAR(anti.poincare.lhs, anti.poincare.rhs, 1e-12);
    EXPECT_NEAR(anti.permutation.lhs, anti.permutation.rhs, 1e-12);
}

TEST(CompressionFit, Hypercubes) {
    std::vector<FamilyMember> fam;
    for (int d = 2; d <= 10; ++d) {
        auto h = hypercube(d);
        auto dm = allPairsDistances(h);
        auto sp = spectralGapExact(h);
        auto disp = maxDisplacement(h, dm);
        fam.push_back({h.name(), static_cast<double>(dm.diameter()), mainBound(h, sp, disp, 2.0).value});
    }
    auto fit = compressionFit(fam);
    EXPECT_NEAR(fit.eta, 0.5, 1e-9);
    EXPECT_NEAR(fit.alphaUpper, 0.5, 1e-9);
    for (const auto& m : fit.family) EXPECT_GE(m.lowerBound, fit.K * std::pow(m.diameter, fit.eta) * (1 - 1e-12));
}

TEST(CompressionFit, EnvelopeAndErrors) {
    auto fit = compressionFit({{"a", 2, 1.0}, {"b", 4, 3.0}, {"c", 8, 2.5}});
    for (const auto& m : fit.family) EXPECT_GE(m.lowerBound, fit.K * std::pow(m.diameter, fit.eta) * (1 - 1e-12));
    EXPECT_THROW(compressionFit({{"a", 3, 1.0}, {"b", 3, 1.1}, {"c", 3, 1.2}}), ValidationError);
    EXPECT_THROW(compressionFit({{"a", 2, 1.0}, {"b", 4, 1.1}}), ValidationError);
    EXPECT_THROW(compressionFit({{"a", 2, 1.0}, {"b", 4, 0.0}, {"c", 8, 1.0}}), ValidationError);
}

TEST(BoxSpace, Distances) {
    BoxSpace box({hypercube(2), hypercube(5), cycle(7)});
    EXPECT_EQ(box.distance(0, 0, 0, 3), 2);
    EXPECT_EQ(box.distance(1, 0, 1, 31), 5);
    EXPECT_EQ(box.distance(0, 1, 1, 0), 5);
    EXPECT_EQ(box.distance(1, 0, 0, 1), 5);
    EXPECT_EQ(box.distance(0, 0, 2, 0), 3);
    EXPECT_THROW(box.distance(3, 0, 0, 0), ValidationError);
    EXPECT_THROW(box.distance(0, 4, 0, 0), ValidationError);
}

}  // namespace
}  // namespace gdist
