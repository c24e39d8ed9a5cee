// Prints every lower bound next to the exact c2 value for a few graphs the
// bounds are sharp on, and a few where they are not.
#include <cstdio>

#include "gdist/generators.hpp"
#include "gdist/report.hpp"

int main() {
    using namespace gdist;
    const Graph graphs[] = {cycle(6), cycle(16), hypercube(4), torus({4, 8}), lamplighter(4, 1), slnq(2, 3)};
    for (const auto& g : graphs) {
        const auto r = compareTable(g, 2.0);
        std::printf("%s (%d vertices)\n", g.name().c_str(), g.vertexCount());
        for (const auto& e : r.entries) {
            std::printf("  %-18s %.6f%s\n", e.name.c_str(), e.value, e.heuristic ? "  (heuristic)" : "");
        }
        if (r.exactC2) std::printf("  %-18s %.6f\n", "exact c2", *r.exactC2);
        for (const auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
    }
}
