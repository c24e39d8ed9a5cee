#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "gdist/bounds.hpp"
#include "gdist/c2_oracle.hpp"
#include "gdist/displacement.hpp"
#include "gdist/embeddings.hpp"
#include "gdist/graph.hpp"
#include "gdist/spectral.hpp"

namespace gdist {

// Keys keep insertion order so that output files are byte-stable.
using Json = nlohmann::ordered_json;

inline Json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline void writeTextFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
    if (!out) throw ValidationError("failed writing " + path);
}

// Shortest round-trip decimal, independent of the C locale.
inline std::string formatDouble(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw ComputationError("cannot format number");
    return {buf, end};
}

// {"name", "n", "edges", "labels"?, "vertex_transitive"?}
inline Json graphToJson(const Graph& g) {
    Json j;
    j["name"] = g.name();
    j["n"] = g.vertexCount();
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (!g.labels().empty()) j["labels"] = g.labels();
    if (g.vertexTransitive()) j["vertex_transitive"] = true;
    return j;
}

inline Graph graphFromJson(const Json& j) {
    try {
        if (!j.is_object()) throw ValidationError("graph JSON must be an object");
        for (const auto& [key, _] : j.items()) {
            if (key != "name" && key != "n" && key != "edges" && key != "labels" && key != "vertex_transitive") {
                throw ValidationError("unknown graph field '" + key + "'");
            }
        }
        if (!j.contains("n") || !j["n"].is_number_integer()) throw ValidationError("graph needs an integer 'n'");
        if (!j.contains("edges") || !j["edges"].is_array()) throw ValidationError("graph needs an 'edges' array");
        const long long n = j["n"].get<long long>();
        if (n < 1 || n > vertexBudget()) throw ValidationError("vertex count " + std::to_string(n) + " out of range");
        std::vector<Edge> edges;
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ValidationError("each edge must be a pair of integers");
            }
            const long long u = e[0].get<long long>(), v = e[1].get<long long>();
            if (u < 0 || v < 0 || u >= n || v >= n) {
                throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            }
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        Graph g(static_cast<int>(n), edges, j.value("name", std::string{}));
        if (j.contains("labels")) g = g.withLabels(j["labels"].get<std::vector<std::string>>());
        if (j.contains("vertex_transitive")) g = g.withVertexTransitive(j["vertex_transitive"].get<bool>());
        return g;
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed graph JSON: ") + e.what());
    }
}

inline Json embeddingToJson(const Embedding& e) {
    Json j;
    j["p"] = e.p;
    j["dim"] = e.dim;
    j["vectors"] = e.vectors;
    return j;
}

inline Embedding embeddingFromJson(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("vectors")) throw ValidationError("embedding needs 'vectors'");
        Embedding e;
        e.p = j.value("p", 2.0);
        e.vectors = j["vectors"].get<std::vector<std::vector<double>>>();
        e.dim = j.contains("dim") ? j["dim"].get<int>()
                                  : (e.vectors.empty() ? 0 : static_cast<int>(e.vectors[0].size()));
        return e;
    } catch (const Json::exception& ex) {
        throw ValidationError(std::string("malformed embedding JSON: ") + ex.what());
    }
}

inline Json spectralToJson(const SpectralResult& s, bool withWitness = false) {
    Json j;
    j["p"] = s.p;
    j["value"] = s.value;
    j["kind"] = toString(s.kind);
    j["method"] = s.method;
    j["iteration_capped"] = s.iterationCapped;
    if (withWitness && !s.witness.empty()) j["witness"] = s.witness;
    return j;
}

inline Json permutationToJson(const VertexPermutation& a) {
    Json j;
    j["image"] = a.image;
    j["displacement"] = a.displacement;
    return j;
}

inline Json displacementToJson(const DisplacementResult& d) {
    Json j;
    j["value"] = d.value;
    j["diameter"] = d.diameter;
    j["is_antipodal"] = d.isAntipodal;
    j["matching_size_above_value"] = d.matchingSizeAboveValue;
    j["witness"] = permutationToJson(d.witness);
    return j;
}

inline Json pairsToJson(const std::vector<Edge>& pairs) {
    Json a = Json::array();
    for (auto [x, y] : pairs) a.push_back({x, y});
    return a;
}

inline Json distortionToJson(const DistortionReport& r) {
    Json j;
    j["lip"] = r.lip;
    j["lip_inv"] = r.lipInv;
    j["distortion"] = r.distortion;
    j["lip_pairs"] = pairsToJson(r.lipPairs);
    j["lip_inv_pairs"] = pairsToJson(r.lipInvPairs);
    return j;
}

inline Json c2ToJson(const C2Result& r, double tol, bool withPoints = false) {
    Json j;
    j["value"] = r.value;
    j["lower"] = r.lower;
    j["tol"] = tol;
    j["status"] = toString(r.status);
    j["probes"] = r.probes;
    j["iterations"] = r.iterations;
    if (withPoints) j["points"] = r.points;
    return j;
}

inline Json boundEntryToJson(const BoundEntry& e) {
    Json j;
    j["bound"] = e.name;
    j["value"] = e.value;
    j["heuristic"] = e.heuristic;
    Json ing = Json::object();
    for (const auto& [k, v] : e.ingredients) ing[k] = v;
    j["ingredients"] = std::move(ing);
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

inline Json boundReportToJson(const BoundReport& r) {
    Json j;
    j["graph"] = r.graphName;
    j["p"] = r.p;
    Json entries = Json::array();
    for (const auto& e : r.entries) entries.push_back(boundEntryToJson(e));
    j["entries"] = std::move(entries);
    if (r.exactC2) j["exact_c2"] = *r.exactC2;
    if (r.exactC2Lower) j["exact_c2_lower"] = *r.exactC2Lower;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline std::string csvField(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Columns: bound, value, heuristic, ingredients (key=value pairs joined by ';').
inline std::string boundReportToCsv(const BoundReport& r) {
    std::ostringstream out;
    out << "bound,value,heuristic,ingredients\n";
    auto row = [&](const std::string& name, double value, bool heuristic, const std::string& ingredients) {
        out << csvField(name) << ',' << formatDouble(value) << ',' << (heuristic ? "true" : "false") << ','
            << csvField(ingredients) << '\n';
    };
    for (const auto& e : r.entries) {
        std::string ing;
        for (const auto& [k, v] : e.ingredients) {
            if (!ing.empty()) ing += ';';
            ing += k + "=" + formatDouble(v);
        }
        row(e.name, e.value, e.heuristic, ing);
    }
    if (r.exactC2) {
        row("exact-c2", *r.exactC2, false, r.exactC2Lower ? "lower=" + formatDouble(*r.exactC2Lower) : "");
    }
    return out.str();
}

inline Json compressionFitToJson(const CompressionFit& f) {
    Json j;
    Json fam = Json::array();
    for (const auto& m : f.family) {
        Json mj;
        mj["graph"] = m.name;
        mj["diameter"] = m.diameter;
        mj["lower_bound"] = m.lowerBound;
        mj["heuristic"] = m.heuristic;
        fam.push_back(std::move(mj));
    }
    j["family"] = std::move(fam);
    j["eta"] = f.eta;
    j["K"] = f.K;
    j["alpha_upper"] = f.alphaUpper;
    j["heuristic"] = f.heuristic;
    return j;
}

}  // namespace gdist
