#pragma once

#include <optional>
#include <string>

#include "gdist/bounds.hpp"
#include "gdist/c2_oracle.hpp"
#include "gdist/displacement.hpp"
#include "gdist/spectral.hpp"

namespace gdist {

struct BoundSelection {
    bool main = true;
    bool vertexTransitive = true;
    bool gn = true;
    bool nr = true;
    bool lmn = true;
    std::optional<double> epsilon;  // unset: best over the GN grid
    double lmnConstant = 1.0;
    bool oracle = false;
};

struct ReportOptions {
    VariationalOptions variational;
    VolumeOptions volume;
    C2Options c2;
};

// lambda_1^(p): exact for p = 2, a variational upper value otherwise.
inline SpectralResult spectralFor(const Graph& g, double p, const ReportOptions& opt = {}) {
    return p == 2.0 ? spectralGapExact(g, opt.variational.exact) : spectralGapVariational(g, p, opt.variational);
}

inline BoundReport buildBoundReport(const Graph& g, double p, const BoundSelection& sel,
                                    const ReportOptions& opt = {}) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must be finite and >= 1");
    const auto dm = allPairsDistances(g);
    const auto spectral = spectralFor(g, p, opt);
    BoundReport r;
    r.graphName = g.name();
    r.p = p;
    if (sel.main) r.entries.push_back(mainBound(g, spectral, maxDisplacement(g, dm), p));
    if (sel.vertexTransitive) {
        if (g.vertexTransitive()) r.entries.push_back(vertexTransitiveBound(g, dm, spectral, p));
        else r.notes.push_back("vertex-transitive: graph carries no vertex-transitive flag");
    }
    if (sel.gn) {
        r.entries.push_back(sel.epsilon ? gnBound(g, dm, spectral, p, *sel.epsilon, opt.volume)
                                        : gnSweep(g, dm, spectral, p, opt.volume).best);
    }
    if (sel.nr || sel.lmn) {
        if (p != 2.0) {
            r.notes.push_back("nr, lmn: defined for p = 2 only");
        } else {
            auto guarded = [&](const char* name, auto&& make) {
                try {
                    r.entries.push_back(make());
                } catch (const ValidationError& e) {
                    r.notes.push_back(std::string(name) + ": " + e.what());
                }
            };
            if (sel.nr) guarded("nr", [&] { return nrBound(g, dm, spectral); });
            if (sel.lmn) guarded("lmn", [&] { return lmnBound(g, spectral, sel.lmnConstant); });
        }
    }
    if (sel.oracle) {
        if (p != 2.0) {
            r.notes.push_back("exact-c2: available for p = 2 only");
        } else if (g.vertexCount() > opt.c2.budget) {
            r.notes.push_back("exact-c2: skipped, " + std::to_string(g.vertexCount()) +
                              " vertices exceed the SDP budget of " + std::to_string(opt.c2.budget));
        } else {
            const auto c2 = exactC2(dm, opt.c2);
            r.exactC2 = c2.value;
            r.exactC2Lower = c2.lower;
            r.notes.push_back(std::string("exact-c2: ") + toString(c2.status));
        }
    }
    return r;
}

// One row per bound (main, vertex-transitive, best GN, NR, LMN with C = 1)
// plus the oracle value when the SDP budget allows.
inline BoundReport compareTable(const Graph& g, double p, const ReportOptions& opt = {}) {
    BoundSelection sel;
    sel.oracle = true;
    return buildBoundReport(g, p, sel, opt);
}

}  // namespace gdist
