// gdist: command-line front end for the graph distortion toolkit.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdist/bounds.hpp"
#include "gdist/c2_oracle.hpp"
#include "gdist/displacement.hpp"
#include "gdist/embeddings.hpp"
#include "gdist/generators.hpp"
#include "gdist/hamiltonian.hpp"
#include "gdist/io.hpp"
#include "gdist/report.hpp"
#include "gdist/spectral.hpp"
#include "gdist/verify.hpp"

namespace {

using namespace gdist;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        writeTextFile(out, text);
    }
}

// Reports are indented; graphs, embeddings and permutations stay on one line.
void emitJson(const Json& j, const std::string& out, bool compact = false) {
    emit(j.dump(compact ? -1 : 2) + "\n", out);
}

Graph loadGraph(const std::string& path) {
    Graph g = graphFromJson(readJsonFile(path));
    if (!isConnected(g)) throw ValidationError(path + ": graph is not connected");
    return g;
}

void requireParams(const std::vector<int>& params, std::size_t count, const std::string& family) {
    if (params.size() != count) {
        throw ValidationError("family " + family + " takes " + std::to_string(count) + " parameter(s), got " +
                              std::to_string(params.size()));
    }
}

Graph generate(const std::string& family, const std::vector<int>& params, const std::string& base,
               std::uint64_t seed) {
    if (family == "cycle") {
        requireParams(params, 1, family);
        return cycle(params[0]);
    }
    if (family == "hypercube") {
        requireParams(params, 1, family);
        return hypercube(params[0]);
    }
    if (family == "torus") {
        if (params.empty()) throw ValidationError("torus needs at least one cycle length");
        return torus(params);
    }
    if (family == "lamplighter") {
        requireParams(params, 2, family);
        return lamplighter(params[0], params[1]);
    }
    if (family == "slnq") {
        requireParams(params, 2, family);
        return slnq(params[0], params[1]);
    }
    if (family == "stitch") {
        requireParams(params, 1, family);
        if (base.empty()) throw ValidationError("stitch needs --graph with a 3-regular base graph");
        return stitch(loadGraph(base), params[0]);
    }
    if (family == "random-regular") {
        requireParams(params, 2, family);
        return randomRegular(params[0], params[1], seed);
    }
    if (family == "complete") {
        requireParams(params, 1, family);
        return completeGraph(params[0]);
    }
    if (family == "path") {
        requireParams(params, 1, family);
        return path(params[0]);
    }
    if (family == "prism") {
        requireParams(params, 1, family);
        return prism(params[0]);
    }
    throw ValidationError("unknown family " + family);
}

void setBudget(const char* var, long value) {
    if (value <= 0) throw ValidationError(std::string(var) + " must be positive");
    ::setenv(var, std::to_string(value).c_str(), 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral and displacement lower bounds on Euclidean distortion of finite graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gdist 1.0.0");

    long vertexBudgetFlag = 0, sdpBudgetFlag = 0;
    app.add_option("--vertex-budget", vertexBudgetFlag, "Largest graph accepted (default 200000, env GDIST_VERTEX_BUDGET)");
    app.add_option("--sdp-budget", sdpBudgetFlag, "Largest graph for the c2 oracle (default 128, env GDIST_SDP_BUDGET)");

    std::string graphPath, outPath;
    double p = 2.0;
    std::uint64_t seed = 1;

    auto* gen = app.add_subcommand("generate", "Build a graph family and write graph JSON");
    std::string family;
    std::vector<int> params;
    gen->add_option("--family", family, "cycle|hypercube|torus|lamplighter|slnq|stitch|random-regular|complete|path|prism")
        ->required();
    gen->add_option("--params", params, "Family parameters, e.g. '4 8' for a torus or 'n k' for random-regular");
    gen->add_option("--graph", graphPath, "Base graph for stitch")->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Seed for random-regular");
    gen->add_option("--out", outPath, "Output file (default stdout)");

    auto* spec = app.add_subcommand("spectral", "Compute lambda_1^(p)");
    bool exactFlag = false, variationalFlag = false, witnessFlag = false;
    int restarts = 16;
    spec->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    spec->add_option("--p", p, "Exponent p >= 1");
    auto* exactOpt = spec->add_flag("--exact", exactFlag, "Exact eigensolver (p = 2 only)");
    spec->add_flag("--variational", variationalFlag, "Multi-start descent, an upper value")->excludes(exactOpt);
    spec->add_option("--restarts", restarts, "Random starts for --variational");
    spec->add_option("--seed", seed, "Seed for --variational");
    spec->add_flag("--witness", witnessFlag, "Include the minimizing function");
    spec->add_option("--out", outPath);

    auto* disp = app.add_subcommand("displacement", "Maximal displacement D(X) with a witness");
    std::string witnessPath;
    bool diracFlag = false;
    std::optional<int> threshold;
    disp->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    disp->add_option("--witness", witnessPath, "Write the witness permutation here");
    disp->add_flag("--dirac", diracFlag, "Also build the Hamiltonian-circuit permutation");
    disp->add_option("--threshold", threshold, "Far-graph threshold for --dirac (default floor(log_{k-1}(n/6)))");
    disp->add_option("--out", outPath);

    auto* dist = app.add_subcommand("distortion", "Distortion of an explicit embedding");
    std::string embeddingPath;
    dist->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    dist->add_option("--embedding", embeddingPath)->required()->check(CLI::ExistingFile);
    dist->add_option("--out", outPath);

    auto* c2 = app.add_subcommand("exact-c2", "Least Euclidean distortion by Gram-matrix feasibility");
    double tol = 1e-3;
    int probeIterations = C2Options{}.probeIterations;
    std::string pointsPath;
    c2->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    c2->add_option("--tol", tol, "Absolute tolerance on the returned value");
    c2->add_option("--iterations", probeIterations, "Iteration cap per bisection probe");
    c2->add_option("--points", pointsPath, "Write the attaining embedding as embedding JSON");
    c2->add_option("--out", outPath);

    auto* bnd = app.add_subcommand("bounds", "Distortion lower bounds for one graph");
    bool allFlag = false, mainFlag = false, gnFlag = false, nrFlag = false, lmnFlag = false, vtFlag = false;
    bool oracleFlag = false;
    std::optional<double> eps;
    double lmnC = 1.0;
    std::string format = "json", csvPath;
    bnd->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    bnd->add_option("--p", p);
    bnd->add_flag("--all", allFlag, "Every bound (default)");
    bnd->add_flag("--main", mainFlag);
    bnd->add_flag("--vt", vtFlag, "Vertex-transitive form, needs the flag in the graph JSON");
    bnd->add_flag("--gn", gnFlag);
    bnd->add_option("--eps", eps, "Fixed epsilon for --gn (default: best over 0.1..0.9)");
    bnd->add_flag("--nr", nrFlag);
    bnd->add_flag("--lmn", lmnFlag);
    bnd->add_option("--C", lmnC, "Constant for --lmn");
    bnd->add_flag("--with-oracle", oracleFlag, "Add the exact c2 value");
    bnd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    bnd->add_option("--csv", csvPath, "Also write the CSV table here");
    bnd->add_option("--out", outPath);

    auto* cmp = app.add_subcommand("compare", "Table of every bound next to the c2 oracle");
    cmp->add_option("--graph", graphPath)->required()->check(CLI::ExistingFile);
    cmp->add_option("--p", p);
    cmp->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cmp->add_option("--out", outPath);

    auto* comp = app.add_subcommand("compression", "Compression exponent bound for a family");
    std::vector<std::string> familyPaths;
    comp->add_option("--family", familyPaths, "Graph JSON files, in order")->required()->check(CLI::ExistingFile);
    comp->add_option("--p", p);
    comp->add_option("--out", outPath);

    auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
    std::string filter, summaryPath;
    ver->add_option("--filter", filter, "Criterion numbers or keys, comma separated");
    ver->add_option("--json", summaryPath, "Write a machine-readable summary");
    ver->add_option("--seed", seed, "Seed for random instances")->default_val(2024);
    double perturb = 1.0;
    // Negative control: scales every exact eigenvalue the suite sees.
    ver->add_option("--perturb-spectral", perturb)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (vertexBudgetFlag) setBudget("GDIST_VERTEX_BUDGET", vertexBudgetFlag);
        if (sdpBudgetFlag) setBudget("GDIST_SDP_BUDGET", sdpBudgetFlag);
        if (!(p >= 1.0)) throw ValidationError("--p must be >= 1");

        if (*gen) {
            emitJson(graphToJson(generate(family, params, graphPath, seed)), outPath, true);
        } else if (*spec) {
            const Graph g = loadGraph(graphPath);
            SpectralResult r;
            if (exactFlag && p != 2.0) throw ValidationError("--exact is available for p = 2 only");
            if (variationalFlag || p != 2.0) {
                VariationalOptions vo;
                vo.restarts = restarts;
                vo.seed = seed;
                r = spectralGapVariational(g, p, vo);
            } else {
                r = spectralGapExact(g);
            }
            Json j;
            j["graph"] = g.name();
            j["spectral"] = spectralToJson(r, witnessFlag);
            emitJson(j, outPath);
        } else if (*disp) {
            const Graph g = loadGraph(graphPath);
            const auto dm = allPairsDistances(g);
            const auto r = maxDisplacement(g, dm);
            Json j;
            j["graph"] = g.name();
            j["displacement"] = displacementToJson(r);
            if (diracFlag) {
                try {
                    j["dirac"] = permutationToJson(diracDisplacementPermutation(g, dm, threshold));
                } catch (const DiracConditionFailed& e) {
                    j["dirac"] = {{"error", e.what()}};
                }
            }
            if (!witnessPath.empty()) emitJson(permutationToJson(r.witness), witnessPath, true);
            emitJson(j, outPath);
        } else if (*dist) {
            const Graph g = loadGraph(graphPath);
            const auto e = embeddingFromJson(readJsonFile(embeddingPath));
            Json j;
            j["graph"] = g.name();
            j["distortion"] = distortionToJson(distortion(g, allPairsDistances(g), e));
            emitJson(j, outPath);
        } else if (*c2) {
            const Graph g = loadGraph(graphPath);
            C2Options o;
            o.tol = tol;
            o.probeIterations = probeIterations;
            const auto r = exactC2(allPairsDistances(g), o);
            Json j;
            j["graph"] = g.name();
            j["exact_c2"] = c2ToJson(r, tol);
            if (!pointsPath.empty()) {
                Embedding e{2.0, r.points.empty() ? 0 : static_cast<int>(r.points[0].size()), r.points};
                emitJson(embeddingToJson(e), pointsPath, true);
            }
            emitJson(j, outPath);
            if (r.status == C2Status::IterationCap) {
                std::cerr << "exact-c2: iteration cap reached; value is an upper bound, lower is certified\n";
                return kExitComputation;
            }
        } else if (*bnd || *cmp) {
            const Graph g = loadGraph(graphPath);
            BoundReport r;
            if (*cmp) {
                r = compareTable(g, p);
            } else {
                BoundSelection sel;
                const bool any = mainFlag || vtFlag || gnFlag || nrFlag || lmnFlag;
                if (any && !allFlag) sel = {mainFlag, vtFlag, gnFlag, nrFlag, lmnFlag};
                if (eps && !(sel.gn)) throw ValidationError("--eps applies to --gn");
                sel.epsilon = eps;
                sel.lmnConstant = lmnC;
                sel.oracle = oracleFlag;
                r = buildBoundReport(g, p, sel);
            }
            if (!csvPath.empty()) writeTextFile(csvPath, boundReportToCsv(r));
            if (format == "csv") emit(boundReportToCsv(r), outPath);
            else emitJson(boundReportToJson(r), outPath);
        } else if (*comp) {
            std::vector<FamilyMember> members;
            for (const auto& path : familyPaths) {
                const Graph g = loadGraph(path);
                const auto dm = allPairsDistances(g);
                const auto e = mainBound(g, spectralFor(g, p), maxDisplacement(g, dm), p);
                members.push_back({g.name(), static_cast<double>(dm.diameter()), e.value, e.heuristic});
            }
            emitJson(compressionFitToJson(compressionFit(std::move(members))), outPath);
        } else if (*ver) {
            VerifyOptions vo;
            vo.filter = filter;
            vo.seed = seed;
            if (perturb != 1.0) {
                vo.spectral = [perturb](const Graph& g) {
                    auto r = spectralGapExact(g);
                    r.value *= perturb;
                    return r;
                };
            }
            bool ok = true;
            const auto results = runAcceptance(vo, [&](const CriterionResult& r) {
                std::cout << formatCriterionLine(r) << '\n';
                std::cout.flush();
                ok = ok && r.passed;
            });
            if (!summaryPath.empty()) emitJson(acceptanceToJson(results), summaryPath);
            return ok ? kExitOk : kExitVerification;
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ComputationError& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return kExitComputation;
    }
}
