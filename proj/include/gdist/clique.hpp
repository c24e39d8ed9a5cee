#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdist/errors.hpp"

namespace gdist {

// Subsets of at most 64 vertices as bitmasks.
using VertexMask = std::uint64_t;

struct CliqueSearch {
    std::optional<VertexMask> clique;  // a clique of the requested size, if found
    bool exhausted = true;             // false when the node cap stopped the search
    long nodes = 0;
};

namespace detail {

struct CliqueState {
    const std::vector<VertexMask>* adj;
    int target;
    long nodeCap;
    long nodes = 0;
    bool capped = false;
    VertexMask found = 0;
};

// Greedy colouring of the candidate set gives the bound: a clique uses at
// most one vertex per colour class.
inline int colourBound(const std::vector<VertexMask>& adj, VertexMask cand) {
    int colours = 0;
    while (cand) {
        ++colours;
        VertexMask avail = cand;
        while (avail) {
            const int v = std::countr_zero(avail);
            avail &= ~(VertexMask{1} << v);
            avail &= ~adj[v];
            cand &= ~(VertexMask{1} << v);
        }
    }
    return colours;
}

inline bool extendClique(CliqueState& s, VertexMask chosen, int size, VertexMask cand) {
    if (size >= s.target) {
        s.found = chosen;
        return true;
    }
    if (++s.nodes > s.nodeCap) {
        s.capped = true;
        return false;
    }
    if (size + std::popcount(cand) < s.target) return false;
    if (size + colourBound(*s.adj, cand) < s.target) return false;
    while (cand) {
        if (size + std::popcount(cand) < s.target) return false;
        const int v = std::countr_zero(cand);
        const VertexMask bit = VertexMask{1} << v;
        cand &= ~bit;
        if (extendClique(s, chosen | bit, size + 1, cand & (*s.adj)[v])) return true;
        if (s.capped) return false;
    }
    return false;
}

}  // namespace detail

// Decides whether the graph given by adjacency masks has a clique of the
// given size, by branch and bound with a colouring bound.
inline CliqueSearch findClique(const std::vector<VertexMask>& adj, int size, long nodeCap = 20'000'000) {
    const int n = static_cast<int>(adj.size());
    if (n > 64) throw ValidationError("clique search supports at most 64 vertices");
    CliqueSearch out;
    if (size <= 0) {
        out.clique = 0;
        return out;
    }
    if (size > n) return out;
    detail::CliqueState s{&adj, size, nodeCap};
    const VertexMask all = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
    if (detail::extendClique(s, 0, 0, all)) out.clique = s.found;
    out.exhausted = !s.capped;
    out.nodes = s.nodes;
    return out;
}

}  // namespace gdist
