#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gdist/errors.hpp"

namespace gdist {

class DiracConditionFailed : public ComputationError {
public:
    explicit DiracConditionFailed(const std::string& what) : ComputationError(what) {}
};

// Hamiltonian circuit of a graph with minimum degree >= n/2, built by the
// constructive proof of Dirac's theorem: extend a path greedily at both
// ends; once maximal, close it into a cycle through a crossing pair of
// endpoint neighbors; if vertices remain, open the cycle next to an outside
// neighbor and continue. adjacent(u, v) must be symmetric and irreflexive.
// Returns the vertex order of the circuit starting at vertex 0.
template <class Adjacent>
std::vector<int> diracHamiltonianCycle(int n, Adjacent&& adjacent) {
    if (n < 3) throw DiracConditionFailed("Dirac's theorem needs at least 3 vertices");
    for (int u = 0; u < n; ++u) {
        int deg = 0;
        for (int v = 0; v < n; ++v) deg += (u != v && adjacent(u, v)) ? 1 : 0;
        if (2 * deg < n) {
            throw DiracConditionFailed("vertex " + std::to_string(u) + " has degree " + std::to_string(deg) +
                                       " < n/2 = " + std::to_string(n) + "/2");
        }
    }

    std::vector<int> path{0};
    std::vector<char> inPath(static_cast<std::size_t>(n), 0);
    inPath[0] = 1;

    auto extendEnd = [&] {
        bool grew = true;
        while (grew) {
            grew = false;
            const int end = path.back();
            for (int v = 0; v < n; ++v) {
                if (!inPath[v] && adjacent(end, v)) {
                    path.push_back(v);
                    inPath[v] = 1;
                    grew = true;
                    break;
                }
            }
        }
    };

    while (true) {
        // Maximal path: no outside neighbor at either end.
        extendEnd();
        std::reverse(path.begin(), path.end());
        extendEnd();
        const int m = static_cast<int>(path.size());
        const int first = path.front(), last = path.back();

        // Find i with first ~ path[i+1] and path[i] ~ last; the degree bound
        // forces the two index sets to meet.
        int split = -1;
        for (int i = 0; i + 1 < m; ++i) {
            if (adjacent(first, path[i + 1]) && adjacent(path[i], last)) {
                split = i;
                break;
            }
        }
        if (split < 0) throw ComputationError("rotation-extension failed to close a cycle");
        std::reverse(path.begin() + split + 1, path.end());
        // path is now a cycle: path[m-1] ~ path[0].
        if (m == n) break;

        // Open the cycle at a vertex with an outside neighbor.
        int pos = -1, outside = -1;
        for (int i = 0; i < m && pos < 0; ++i) {
            for (int v = 0; v < n; ++v) {
                if (!inPath[v] && adjacent(path[i], v)) {
                    pos = i;
                    outside = v;
                    break;
                }
            }
        }
        if (pos < 0) throw ComputationError("graph is disconnected; no Hamiltonian circuit");
        std::rotate(path.begin(), path.begin() + pos + 1, path.end());
        path.push_back(outside);
        inPath[outside] = 1;
    }
    auto zero = std::find(path.begin(), path.end(), 0);
    std::rotate(path.begin(), zero, path.end());
    return path;
}

}  // namespace gdist
