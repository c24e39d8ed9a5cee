#pragma once

#include <algorithm>
#include <limits>
#include <vector>

namespace gdist {

struct BipartiteMatching {
    std::vector<int> matchLeft;   // right partner of each left vertex, or -1
    std::vector<int> matchRight;  // left partner of each right vertex, or -1
    int size = 0;
};

// Hopcroft-Karp over a dense adjacency oracle: adjacent(u, y) for left u in
// [0, nLeft) and right y in [0, nRight). Rows are scanned on demand, so the
// bipartite graph is never materialized.
template <class Adjacent>
BipartiteMatching hopcroftKarp(int nLeft, int nRight, Adjacent&& adjacent) {
    constexpr int kInf = std::numeric_limits<int>::max();
    BipartiteMatching m;
    m.matchLeft.assign(static_cast<std::size_t>(nLeft), -1);
    m.matchRight.assign(static_cast<std::size_t>(nRight), -1);

    // Greedy start.
    for (int u = 0; u < nLeft; ++u) {
        for (int y = 0; y < nRight; ++y) {
            if (m.matchRight[y] == -1 && adjacent(u, y)) {
                m.matchLeft[u] = y;
                m.matchRight[y] = u;
                ++m.size;
                break;
            }
        }
    }

    std::vector<int> dist(static_cast<std::size_t>(nLeft));
    std::vector<int> next(static_cast<std::size_t>(nLeft));
    std::vector<int> queue(static_cast<std::size_t>(nLeft));

    auto bfs = [&] {
        std::size_t head = 0, tail = 0;
        for (int u = 0; u < nLeft; ++u) {
            if (m.matchLeft[u] == -1) {
                dist[u] = 0;
                queue[tail++] = u;
            } else {
                dist[u] = kInf;
            }
        }
        int freeLayer = kInf;
        while (head < tail) {
            const int u = queue[head++];
            if (dist[u] >= freeLayer) continue;
            for (int y = 0; y < nRight; ++y) {
                if (!adjacent(u, y)) continue;
                const int w = m.matchRight[y];
                if (w == -1) {
                    freeLayer = std::min(freeLayer, dist[u] + 1);
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    queue[tail++] = w;
                }
            }
        }
        return freeLayer != kInf;
    };

    // Layered DFS; next[u] remembers how far u's row has been scanned.
    std::vector<int> stack;
    auto dfs = [&](int root) {
        stack.assign(1, root);
        while (!stack.empty()) {
            const int u = stack.back();
            bool advanced = false;
            for (int& y = next[u]; y < nRight; ++y) {
                if (!adjacent(u, y)) continue;
                const int w = m.matchRight[y];
                if (w == -1) {
                    // Augment along the stack: each stacked vertex takes the
                    // right vertex its scan pointer currently sits on.
                    for (std::size_t i = stack.size(); i-- > 0;) {
                        const int a = stack[i];
                        const int b = next[a];
                        m.matchLeft[a] = b;
                        m.matchRight[b] = a;
                        ++next[a];
                    }
                    return true;
                }
                if (dist[w] == dist[u] + 1) {
                    stack.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[u] = kInf;
                stack.pop_back();
                if (!stack.empty()) ++next[stack.back()];
            }
        }
        return false;
    };

    while (bfs()) {
        std::fill(next.begin(), next.end(), 0);
        for (int u = 0; u < nLeft; ++u) {
            if (m.matchLeft[u] == -1 && dfs(u)) ++m.size;
        }
    }
    return m;
}

}  // namespace gdist
