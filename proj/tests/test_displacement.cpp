#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gdist/displacement.hpp"
#include "gdist/generators.hpp"

namespace gdist {
namespace {

int bruteForceMaxDisplacement(const DistanceMatrix& dm) {
    std::vector<int> perm(static_cast<std::size_t>(dm.vertexCount()));
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        int rho = dm.diameter();
        for (int x = 0; x < dm.vertexCount(); ++x) rho = std::min(rho, static_cast<int>(dm(x, perm[x])));
        best = std::max(best, rho);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Graph> smallCorpus() {
    std::vector<Graph> out{path(2), path(3), path(5), path(8), cycle(3), cycle(5), cycle(6), cycle(8),
                           completeGraph(4), hypercube(2), hypercube(3), torus({3, 3}), prism(2),
                           randomRegular(8, 3, 7), randomRegular(6, 3, 1)};
    out.push_back(buildGraph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}));  // spider
    out.push_back(buildGraph(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}}));  // bowtie path
    out.push_back(buildGraph(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}));  // binary tree
    return out;
}

TEST(DisplacementOfPermutation, Examples) {
    auto c4 = cycle(4);
    auto dm = allPairsDistances(c4);
    EXPECT_EQ(displacementOfPermutation(dm, std::vector<int>{0, 1, 2, 3}), 0);
    EXPECT_EQ(displacementOfPermutation(dm, std::vector<int>{1, 2, 3, 0}), 1);
    EXPECT_EQ(displacementOfPermutation(dm, std::vector<int>{2, 3, 0, 1}), 2);
    EXPECT_THROW(displacementOfPermutation(dm, std::vector<int>{0, 0, 1, 2}), ValidationError);
    EXPECT_THROW(displacementOfPermutation(dm, std::vector<int>{0, 1, 2}), ValidationError);
    EXPECT_THROW(displacementOfPermutation(dm, std::vector<int>{0, 1, 2, 4}), ValidationError);
}

TEST(Matching, KnownSizes) {
    // K_{2,3}: left 0,1 adjacent to all of right 0..2.
    auto m = hopcroftKarp(2, 3, [](int, int) { return true; });
    EXPECT_EQ(m.size, 2);
    // Right vertex 0 is the only neighbor of every left vertex.
    auto star = hopcroftKarp(3, 3, [](int, int y) { return y == 0; });
    EXPECT_EQ(star.size, 1);
    // A path structure that needs augmentation past the greedy start.
    auto chain = hopcroftKarp(3, 3, [](int u, int y) { return y == u || y == u + 1; });
    EXPECT_EQ(chain.size, 3);
    auto rev = hopcroftKarp(4, 4, [](int u, int y) { return u == 0 ? y == 0 || y == 3 : y <= u - 1; });
    EXPECT_EQ(rev.size, 4);
    for (int u = 0; u < 4; ++u) EXPECT_EQ(rev.matchRight[rev.matchLeft[u]], u);
}

TEST(Matching, AgreesWithBruteForceOnRandomBipartite) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(7));
        std::vector<char> adj(static_cast<std::size_t>(n * n));
        for (auto& a : adj) a = rng.uniform() < 0.35;
        auto m = hopcroftKarp(n, n, [&](int u, int y) { return adj[u * n + y] != 0; });
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        int best = 0;
        // Maximum matching by exhaustive subsets of a permutation: count
        // edges hit by the best permutation.
        do {
            int hit = 0;
            for (int u = 0; u < n; ++u) hit += adj[u * n + perm[u]];
            best = std::max(best, hit);
        } while (std::next_permutation(perm.begin(), perm.end()));
        ASSERT_EQ(m.size, best) << "trial " << trial;
        for (int u = 0; u < n; ++u) {
            if (m.matchLeft[u] >= 0) ASSERT_TRUE(adj[u * n + m.matchLeft[u]]);
        }
    }
}

TEST(MaxDisplacement, Examples) {
    auto c6 = cycle(6);
    auto r = maxDisplacement(c6, allPairsDistances(c6));
    EXPECT_EQ(r.value, 3);
    EXPECT_TRUE(r.isAntipodal);
    EXPECT_EQ(r.witness.displacement, 3);
    for (int x = 0; x < 6; ++x) EXPECT_EQ(r.witness.image[x], (x + 3) % 6);

    auto p3 = path(3);
    auto rp = maxDisplacement(p3, allPairsDistances(p3));
    EXPECT_EQ(rp.value, 1);
    EXPECT_FALSE(rp.isAntipodal);
    EXPECT_LT(rp.matchingSizeAboveValue, 3);

    for (int d = 1; d <= 6; ++d) {
        auto h = hypercube(d);
        auto rh = maxDisplacement(h, allPairsDistances(h));
        EXPECT_EQ(rh.value, d);
        std::vector<int> complement(static_cast<std::size_t>(h.vertexCount()));
        for (int x = 0; x < h.vertexCount(); ++x) complement[x] = x ^ ((1 << d) - 1);
        EXPECT_EQ(displacementOfPermutation(allPairsDistances(h), complement), d);
    }
}

TEST(MaxDisplacement, MatchesBruteForceOnSmallGraphs) {
    for (const auto& g : smallCorpus()) {
        auto dm = allPairsDistances(g);
        auto r = maxDisplacement(g, dm);
        EXPECT_EQ(r.value, bruteForceMaxDisplacement(dm)) << g.name();
        EXPECT_EQ(displacementOfPermutation(dm, r.witness.image), r.value);
        EXPECT_LE(r.value, r.diameter);
        if (!r.isAntipodal) EXPECT_LT(r.matchingSizeAboveValue, g.vertexCount()) << g.name();
    }
}

TEST(MaxDisplacement, InfeasibleAboveValue) {
    auto g = buildGraph(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    auto dm = allPairsDistances(g);
    auto r = maxDisplacement(g, dm);
    EXPECT_FALSE(permutationWithDisplacementAtLeast(dm, r.value + 1).has_value());
    EXPECT_TRUE(permutationWithDisplacementAtLeast(dm, r.value).has_value());
}

TEST(Antipodal, CayleyGraphsAndCounterexamples) {
    for (const auto& g : {cycle(7), hypercube(4), torus({3, 5}), lamplighter(3, 1), slnq(2, 3)}) {
        auto res = hasAntipodalMap(g, allPairsDistances(g));
        EXPECT_TRUE(res.exists) << g.name();
        ASSERT_TRUE(res.witness.has_value());
        EXPECT_EQ(res.witness->displacement, allPairsDistances(g).diameter());
    }
    auto k2 = path(2);
    auto swap = hasAntipodalMap(k2, allPairsDistances(k2));
    EXPECT_TRUE(swap.exists);
    EXPECT_EQ(swap.witness->image, (std::vector<int>{1, 0}));
    auto p3 = path(3);
    EXPECT_FALSE(hasAntipodalMap(p3, allPairsDistances(p3)).exists);
}

TEST(Antipodal, StitchedFamilyIsFarFromAntipodal) {
    // The prism stays smaller than Y, so every permutation moves some vertex
    // of Y inside Y.
    auto y = randomRegular(512, 3, 5);
    auto x = stitch(y, 40);
    auto dmx = allPairsDistances(x);
    auto dmy = allPairsDistances(y);
    auto r = maxDisplacement(x, dmx);
    EXPECT_FALSE(hasAntipodalMap(x, dmx).exists);
    EXPECT_LE(r.value, dmy.diameter() + 5);
    EXPECT_GE(dmx.diameter(), 40);
    EXPECT_GE(r.value, logDisplacementThreshold(x.vertexCount(), 3));
}

TEST(LogThreshold, IntegerFloor) {
    EXPECT_EQ(logDisplacementThreshold(5, 3), 0);
    EXPECT_EQ(logDisplacementThreshold(6, 3), 0);
    EXPECT_EQ(logDisplacementThreshold(11, 3), 0);
    EXPECT_EQ(logDisplacementThreshold(12, 3), 1);
    EXPECT_EQ(logDisplacementThreshold(24, 3), 2);
    EXPECT_EQ(logDisplacementThreshold(6 * 1024, 3), 10);
    EXPECT_EQ(logDisplacementThreshold(6 * 1024 - 1, 3), 9);
    EXPECT_EQ(logDisplacementThreshold(54, 4), 2);
    EXPECT_THROW(logDisplacementThreshold(100, 2), ValidationError);
}

TEST(LogThreshold, LowerBoundsMaxDisplacement) {
    for (const auto& g : {hypercube(5), hypercube(7), randomRegular(64, 3, 1), randomRegular(200, 4, 3),
                          lamplighter(4, 1), slnq(3, 2), torus({6, 8})}) {
        auto dm = allPairsDistances(g);
        int k = 0;
        for (Vertex v = 0; v < g.vertexCount(); ++v) k = std::max(k, g.degree(v));
        EXPECT_GE(maxDisplacement(g, dm).value, logDisplacementThreshold(g.vertexCount(), k)) << g.name();
    }
}

TEST(Dirac, HamiltonianCycleIsValid) {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(30));
        std::vector<char> adj(static_cast<std::size_t>(n * n), 0);
        // Dense random graph conditioned on Dirac's degree bound.
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) adj[u * n + v] = adj[v * n + u] = rng.uniform() < 0.75;
        auto a = [&](int u, int v) { return adj[u * n + v] != 0; };
        bool dirac = true;
        for (int u = 0; u < n; ++u) {
            int deg = 0;
            for (int v = 0; v < n; ++v) deg += a(u, v);
            dirac = dirac && 2 * deg >= n;
        }
        if (!dirac) {
            EXPECT_THROW(diracHamiltonianCycle(n, a), DiracConditionFailed);
            continue;
        }
        auto c = diracHamiltonianCycle(n, a);
        ASSERT_EQ(static_cast<int>(c.size()), n);
        EXPECT_EQ(c[0], 0);
        auto sorted = c;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
        for (int i = 0; i < n; ++i) ASSERT_TRUE(a(c[i], c[(i + 1) % n])) << "trial " << trial;
    }
}

TEST(Dirac, CycleWithAdHocThreshold) {
    auto c8 = cycle(8);
    auto dm = allPairsDistances(c8);
    int minFarDegree = 8;
    for (int x = 0; x < 8; ++x) {
        int deg = 0;
        for (int y = 0; y < 8; ++y) deg += dm(x, y) >= 2;
        minFarDegree = std::min(minFarDegree, deg);
    }
    EXPECT_EQ(minFarDegree, 5);
    auto perm = diracDisplacementPermutation(c8, dm, 2);
    EXPECT_GE(perm.displacement, 2);
    // A single 8-cycle.
    int x = 0, len = 0;
    do {
        x = perm.image[x];
        ++len;
    } while (x != 0);
    EXPECT_EQ(len, 8);
}

TEST(Dirac, RandomRegularEight) {
    auto g = randomRegular(8, 3, 2024);
    auto dm = allPairsDistances(g);
    auto perm = diracDisplacementPermutation(g, dm);
    EXPECT_GE(perm.displacement, 1);
    EXPECT_LE(perm.displacement, maxDisplacement(g, dm).value);
}

TEST(Dirac, LargeRegularGraphs) {
    for (const auto& g : {randomRegular(512, 3, 9), hypercube(9)}) {
        auto dm = allPairsDistances(g);
        int k = 0;
        for (Vertex v = 0; v < g.vertexCount(); ++v) k = std::max(k, g.degree(v));
        const int r = logDisplacementThreshold(g.vertexCount(), k);
        try {
            auto perm = diracDisplacementPermutation(g, dm);
            EXPECT_GE(perm.displacement, std::max(r, 1)) << g.name();
        } catch (const DiracConditionFailed&) {
            // Ball-counting slack is allowed; maxDisplacement still clears r.
            EXPECT_GE(maxDisplacement(g, dm).value, r) << g.name();
        }
    }
}

TEST(Dirac, FailsExplicitly) {
    auto p5 = path(5);
    EXPECT_THROW(diracDisplacementPermutation(p5, allPairsDistances(p5), 3), DiracConditionFailed);
    EXPECT_THROW(diracDisplacementPermutation(p5, allPairsDistances(p5)), ValidationError);
}

}  // namespace
}  // namespace gdist
