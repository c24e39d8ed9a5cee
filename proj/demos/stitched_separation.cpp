// Gluing a long prism onto a random cubic graph makes the diameter grow
// while the maximal displacement stays near the diameter of the cubic part.
#include <cstdio>

#include "gdist/displacement.hpp"
#include "gdist/generators.hpp"

int main() {
    using namespace gdist;
    std::printf("%6s %4s %8s %8s %4s %10s\n", "|Y|", "f", "diam(Y)", "diam(X)", "D", "antipodal");
    for (int size : {32, 64, 128, 256, 512}) {
        const Graph y = randomRegular(size, 3, 7);
        for (int f : {size / 16, size / 8, size / 4}) {
            if (f < 2) continue;
            const Graph x = stitch(y, f);
            const auto dm = allPairsDistances(x);
            const auto d = maxDisplacement(x, dm);
            std::printf("%6d %4d %8d %8d %4d %10s\n", size, f, allPairsDistances(y).diameter(), dm.diameter(),
                        d.value, d.isAntipodal ? "yes" : "no");
        }
    }
}
