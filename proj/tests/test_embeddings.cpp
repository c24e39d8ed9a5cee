#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gdist/c2_oracle.hpp"
#include "gdist/embeddings.hpp"
#include "gdist/generators.hpp"

namespace gdist {
namespace {

using std::numbers::pi;

Embedding randomEmbedding(int n, int dim, double p, Rng& rng) {
    Embedding e{p, dim, {}};
    for (int x = 0; x < n; ++x) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        for (double& c : v) c = rng.normal();
        e.vectors.push_back(std::move(v));
    }
    return e;
}

TEST(Distortion, UnitSquare) {
    auto c4 = cycle(4);
    Embedding e{2.0, 2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    auto r = distortion(c4, allPairsDistances(c4), e);
    EXPECT_NEAR(r.distortion, std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(r.lip, 1.0);
    EXPECT_EQ(r.lipPairs.size(), 4u);
    EXPECT_EQ(r.lipInvPairs, (std::vector<Edge>{{0, 2}, {1, 3}}));
}

TEST(Distortion, CanonicalHypercube) {
    for (int d = 1; d <= 6; ++d) {
        auto h = hypercube(d);
        auto r = distortion(h, allPairsDistances(h), hypercubeEmbedding(d));
        EXPECT_NEAR(r.distortion, std::sqrt(static_cast<double>(d)), 1e-12) << d;
    }
}

TEST(Distortion, IsometricTriangle) {
    auto k3 = completeGraph(3);
    Embedding e{2.0, 2, {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}};
    EXPECT_NEAR(distortion(k3, allPairsDistances(k3), e).distortion, 1.0, 1e-15);
}

TEST(Distortion, Rejections) {
    auto c4 = cycle(4);
    auto dm = allPairsDistances(c4);
    EXPECT_THROW(distortion(c4, dm, Embedding{2.0, 1, {{0}, {1}, {0}, {2}}}), ValidationError);
    EXPECT_THROW(distortion(c4, dm, Embedding{2.0, 1, {{0}, {1}, {2}}}), ValidationError);
    EXPECT_THROW(distortion(c4, dm, Embedding{2.0, 2, {{0, 0}, {1}, {2, 0}, {3, 0}}}), ValidationError);
    EXPECT_THROW(distortion(c4, dm, Embedding{0.5, 1, {{0}, {1}, {2}, {3}}}), ValidationError);
    EXPECT_THROW(distortion(c4, dm, Embedding{2.0, 1, {{0}, {1}, {NAN}, {3}}}), ValidationError);
}

TEST(Distortion, PNormsOnSquare) {
    auto c4 = cycle(4);
    Embedding e{1.0, 2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    // In l1 the square is isometric.
    EXPECT_NEAR(distortion(c4, allPairsDistances(c4), e).distortion, 1.0, 1e-15);
    e.p = 3.0;
    EXPECT_NEAR(distortion(c4, allPairsDistances(c4), e).distortion, std::pow(2.0, 2.0 / 3.0), 1e-12);
}

TEST(Ngon, ClosedForm) {
    for (int n : {4, 6, 8, 10, 12, 16}) {
        auto c = cycle(n);
        auto e = ngonEmbedding(n);
        auto r = distortion(c, allPairsDistances(c), e);
        EXPECT_NEAR(r.lip, 1.0, 1e-12);
        EXPECT_NEAR(r.distortion, n / 2.0 * std::sin(pi / n), 1e-12) << n;
    }
    EXPECT_NEAR(distortion(cycle(6), allPairsDistances(cycle(6)), ngonEmbedding(6)).distortion, 1.5, 1e-12);
    EXPECT_THROW(ngonEmbedding(5), ValidationError);
    EXPECT_THROW(ngonEmbedding(2), ValidationError);
}

TEST(Distortion, ScaleInvariance) {
    Rng rng(21);
    for (const auto& g : {cycle(7), hypercube(3), torus({3, 4}), randomRegular(12, 3, 4)}) {
        auto dm = allPairsDistances(g);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            auto e = randomEmbedding(g.vertexCount(), 3, p, rng);
            const double base = distortion(g, dm, e).distortion;
            for (int t = 0; t < 5; ++t) {
                const double s = std::exp(4.0 * rng.uniform() - 2.0);
                EXPECT_NEAR(distortion(g, dm, scaled(e, s)).distortion / base, 1.0, 1e-12);
            }
        }
    }
}

TEST(Distortion, CenteringInvariance) {
    Rng rng(22);
    for (const auto& g : {cycle(6), hypercube(3), completeGraph(5)}) {
        auto dm = allPairsDistances(g);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            auto e = randomEmbedding(g.vertexCount(), 4, p, rng);
            for (auto& v : e.vectors) v[0] += 10.0;
            auto a = distortion(g, dm, e), b = distortion(g, dm, centered(e));
            EXPECT_NEAR(a.lip, b.lip, 1e-12 * a.lip);
            EXPECT_NEAR(a.lipInv, b.lipInv, 1e-12 * a.lipInv);
            EXPECT_NEAR(a.distortion, b.distortion, 1e-12 * a.distortion);
            EXPECT_EQ(a.lipInvPairs, b.lipInvPairs);
        }
    }
}

TEST(Distortion, LipschitzAttainedOnEdges) {
    Rng rng(23);
    for (const auto& g : {cycle(9), path(6), hypercube(4), torus({4, 5}), lamplighter(3, 1), slnq(2, 3),
                          randomRegular(20, 3, 8)}) {
        auto dm = allPairsDistances(g);
        for (double p : {1.0, 2.0, 3.5}) {
            auto e = randomEmbedding(g.vertexCount(), 3, p, rng);
            EXPECT_NEAR(lipschitzAllPairs(dm, e), distortion(g, dm, e).lip, 1e-12) << g.name();
        }
    }
}

// Chord lengths of phi: |phi(k, l) - phi(0, 0)|^2 = sin^2(pi k/n)/sin^2(pi/n) + sin^2(pi l/N)/sin^2(pi/N).
double torusFormula(int n, int bigN) {
    double best = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
        for (int l = 0; l <= bigN / 2; ++l) {
            if (k == 0 && l == 0) continue;
            const double a = std::sin(pi * k / n) / std::sin(pi / n);
            const double b = std::sin(pi * l / bigN) / std::sin(pi / bigN);
            best = std::max(best, (k + l) / std::sqrt(a * a + b * b));
        }
    }
    return best;
}

TEST(TorusEmbedding, Properties) {
    for (auto [n, bigN] : {std::pair{4, 8}, std::pair{6, 10}, std::pair{4, 6}}) {
        auto g = torus({n, bigN});
        auto r = distortion(g, allPairsDistances(g), torusEmbedding(n, bigN));
        EXPECT_LE(r.lip, 1.0 + 1e-12);
        EXPECT_GE(r.distortion, torusEmbeddingLowerEstimate(n, bigN) - 1e-9);
        EXPECT_NEAR(r.distortion, torusFormula(n, bigN), 1e-12);
    }
    EXPECT_THROW(torusEmbedding(5, 8), ValidationError);
    EXPECT_THROW(torusEmbedding(8, 8), ValidationError);
    EXPECT_THROW(torusEmbedding(8, 4), ValidationError);
}

double embeddedDistortion(const Graph& g, const C2Result& r) {
    Embedding e{2.0, static_cast<int>(r.points.front().size()), r.points};
    return distortion(g, allPairsDistances(g), e).distortion;
}

TEST(ExactC2, Cycles) {
    for (int n : {4, 6, 8, 10, 12, 16}) {
        auto g = cycle(n);
        auto r = exactC2(allPairsDistances(g));
        EXPECT_EQ(r.status, C2Status::Converged);
        EXPECT_NEAR(r.value, n / 2.0 * std::sin(pi / n), 1e-3) << n;
        EXPECT_LE(r.lower, r.value);
        EXPECT_NEAR(embeddedDistortion(g, r), r.value, 1e-9);
    }
}

TEST(ExactC2, Hypercubes) {
    for (int d = 2; d <= 6; ++d) {
        auto g = hypercube(d);
        auto r = exactC2(allPairsDistances(g));
        EXPECT_EQ(r.status, C2Status::Converged);
        EXPECT_NEAR(r.value, std::sqrt(static_cast<double>(d)), 1e-3) << d;
        EXPECT_NEAR(embeddedDistortion(g, r), r.value, 1e-9);
    }
}

TEST(ExactC2, SmallCases) {
    EXPECT_DOUBLE_EQ(exactC2(allPairsDistances(completeGraph(3))).value, 1.0);
    EXPECT_DOUBLE_EQ(exactC2(allPairsDistances(completeGraph(6))).value, 1.0);
    EXPECT_DOUBLE_EQ(exactC2(allPairsDistances(path(2))).value, 1.0);
    // Trees on four points: the star K_{1,3} needs 2/sqrt(3).
    auto star = buildGraph(4, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_NEAR(exactC2(allPairsDistances(star)).value, 2.0 / std::sqrt(3.0), 1e-3);
    EXPECT_NEAR(exactC2(allPairsDistances(path(5))).value, 1.0, 1e-3);
}

TEST(ExactC2, AgreesWithIndependentSolver) {
    // Reference values from an interior-point SDP solve of the same program.
    EXPECT_NEAR(exactC2(allPairsDistances(slnq(2, 3))).value, 1.815001, 1e-3);
    EXPECT_NEAR(exactC2(allPairsDistances(torus({4, 8}))).value, 2.019341, 1e-3);
}

TEST(ExactC2, TorusMatchesEmbedding) {
    for (auto [n, bigN] : {std::pair{4, 8}, std::pair{6, 10}}) {
        auto g = torus({n, bigN});
        auto dm = allPairsDistances(g);
        auto r = exactC2(dm);
        EXPECT_NEAR(r.value, distortion(g, dm, torusEmbedding(n, bigN)).distortion, 1e-2);
    }
}

TEST(ExactC2, BracketIsSound) {
    for (const auto& g : {randomRegular(16, 3, 3), path(7), buildGraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}})}) {
        auto r = exactC2(allPairsDistances(g));
        EXPECT_LE(r.lower, r.value);
        EXPECT_GE(r.lower, 1.0);
        EXPECT_NEAR(embeddedDistortion(g, r), r.value, 1e-9) << g.name();
        EXPECT_LE(r.value - r.lower, 1e-3);
    }
}

TEST(ExactC2, Budget) {
    C2Options opt;
    opt.budget = 10;
    EXPECT_THROW(exactC2(allPairsDistances(cycle(12)), opt), BudgetExceeded);
    opt.budget = 128;
    opt.tol = 0.0;
    EXPECT_THROW(exactC2(allPairsDistances(cycle(6)), opt), ValidationError);
}

TEST(ExactC2, ReportsIterationCap) {
    C2Options opt;
    opt.probeIterations = 10;
    opt.tol = 1e-9;
    auto r = exactC2(allPairsDistances(torus({4, 8})), opt);
    EXPECT_EQ(r.status, C2Status::IterationCap);
    EXPECT_LE(r.lower, r.value);
}

}  // namespace
}  // namespace gdist
