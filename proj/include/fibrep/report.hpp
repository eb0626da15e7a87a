#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "fibrep/errors.hpp"
#include "fibrep/fib_operator.hpp"
#include "fibrep/frames.hpp"
#include "fibrep/window.hpp"

namespace fibrep {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Sequence files: { dim, tail: "zero"|"unknown", label, vectors: [[scalar]] }
// with the exact scalar string grammar, so round-trips are bit-identical.
// ---------------------------------------------------------------------------

inline Json window_to_json(const SequenceWindow& w) {
    Json j;
    j["dim"] = w.dim;
    j["tail"] = to_string(w.tail);
    j["label"] = w.label;
    Json vectors = Json::array();
    for (const auto& v : w.vectors) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(format_scalar(x));
        vectors.push_back(std::move(row));
    }
    j["vectors"] = std::move(vectors);
    return j;
}

inline SequenceWindow window_from_json(const Json& j) {
    SequenceWindow w;
    try {
        w.dim = j.at("dim").get<std::size_t>();
        std::string tail = j.at("tail").get<std::string>();
        if (tail == "zero")
            w.tail = TailPolicy::ZeroTail;
        else if (tail == "unknown")
            w.tail = TailPolicy::UnknownTail;
        else
            throw ParseError("sequence file: tail must be \"zero\" or \"unknown\"");
        w.label = j.value("label", std::string{});
        for (const auto& row : j.at("vectors")) {
            ExactVec v;
            for (const auto& cell : row) v.push_back(parse_scalar(cell.get<std::string>()));
            if (v.size() != w.dim) throw ParseError("sequence file: vector length != dim");
            w.vectors.push_back(std::move(v));
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("sequence file: ") + e.what());
    }
    if (w.vectors.empty()) throw ParseError("sequence file: no vectors");
    return w;
}

inline SequenceWindow read_window(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return window_from_json(j);
}

inline void write_window(const SequenceWindow& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << window_to_json(w).dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Result serializations
// ---------------------------------------------------------------------------

inline Json vec_to_json(const ExactVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format_scalar(x));
    return a;
}

inline Json mat_to_json(const ExactMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json witness_to_json(const Witness& w) {
    Json j;
    if (w.index) j["index"] = *w.index;
    if (!w.coeffs.empty()) j["coeffs"] = vec_to_json(w.coeffs);
    if (!w.vec.empty()) j["vector"] = vec_to_json(w.vec);
    if (!w.description.empty()) j["description"] = w.description;
    return j;
}

inline Json check_to_json(const CheckResult& c) {
    Json j;
    j["passed"] = c.passed;
    j["exact"] = c.exact;
    if (c.skipped) j["skipped"] = true;
    j["residual"] = c.residual;
    if (!c.note.empty()) j["note"] = c.note;
    if (c.witness) j["witness"] = witness_to_json(*c.witness);
    return j;
}

inline Json spectral_to_json(const SpectralSummary& s) {
    Json j;
    j["lambda_min"] = s.lambda_min;
    j["lambda_max"] = s.lambda_max;
    j["sigma_min"] = s.sigma_min;
    j["tolerance"] = s.tolerance;
    return j;
}

inline Json frame_report_to_json(const FrameReport& r) {
    Json j;
    j["n"] = r.n;
    j["dim"] = r.d;
    j["rank"] = r.rank;
    j["complete"] = r.complete;
    j["linearly_independent"] = r.linearly_independent;
    j["kernel_dim"] = r.kernel_dim;
    j["bounds"] = spectral_to_json(r.bounds);
    j["is_frame_for_h"] = r.is_frame_for_h;
    return j;
}

inline Json operator_to_json(const FibOperator& t) {
    Json j;
    j["span_basis"] = t.span_basis;
    j["matrix"] = mat_to_json(t.mat);
    j["method"] = to_string(t.method);
    j["tf1"] = vec_to_json(t.tf1);
    return j;
}

/// The single structured document every command emits.
struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::array();
    std::int64_t timing_ms = 0;

    void add(const std::string& name, Json value) {
        Json entry;
        entry["name"] = name;
        entry["value"] = std::move(value);
        results.push_back(std::move(entry));
    }

    Json to_json() const {
        Json j;
        j["schema_version"] = "1";
        j["command"] = command;
        j["inputs"] = inputs;
        j["results"] = results;
        j["timing_ms"] = timing_ms;
        return j;
    }
};

} // namespace fibrep
