#pragma once

// JSON views of the library's report types.  Rationals are "p/q" strings,
// permutations are arrays of images, keys keep insertion order so output is
// byte-stable.

#include "dsm/diagsum.hpp"
#include "dsm/erdos3.hpp"
#include "dsm/explore.hpp"
#include "dsm/matrix_io.hpp"
#include "dsm/weakform.hpp"

#include "json.hpp"

namespace dsm {

using Json = nlohmann::ordered_json;

inline Json to_json(const Permutation& p) {
    Json a = Json::array();
    for (std::size_t x : p.map()) a.push_back(x);
    return a;
}

inline Json float_rows_json(const FloatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
        Json row = Json::array();
        for (double x : m.row(i)) row.push_back(x);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const GapReport& g) {
    Json j;
    j["frob_sq"] = g.frob_sq.str();
    j["max_trace"] = g.max_trace.str();
    j["gap"] = g.gap.str();
    j["saturated"] = g.saturated;
    return j;
}

inline Json to_json(const TraceReport& t) {
    Json j;
    j["max_value"] = t.max_value.str();
    j["argmax"] = to_json(t.argmax);
    j["method"] = to_string(t.method);
    return j;
}

inline Json to_json(const Classification& c) {
    Json j;
    j["saturated"] = c.saturated;
    if (c.saturated) {
        j["form"] = to_string(*c.form);
        j["P"] = to_json(c.witness->first);
        j["Q"] = to_json(c.witness->second);
    } else {
        j["separator"] = to_json(*c.separator);
        j["frob_sq"] = c.gap.frob_sq.str();
        j["max_trace"] = c.gap.max_trace.str();
        j["gap"] = c.gap.gap.str();
    }
    return j;
}

inline Json to_json(const EnumerationReport& r) {
    Json j;
    j["denominator"] = r.denominator;
    j["total_candidates"] = r.total_candidates;
    j["ds_count"] = r.ds_count;
    j["saturating_count"] = r.saturating.size();
    Json list = Json::array();
    for (const auto& s : r.saturating) {
        Json e;
        e["rows"] = matrix_rows_json(s.matrix);
        e["classification"] = to_json(s.classification);
        list.push_back(std::move(e));
    }
    j["saturating"] = std::move(list);
    return j;
}

inline Json to_json(const BlockJSpec& s) {
    Json j;
    j["P"] = to_json(s.p);
    j["parts"] = s.parts;
    j["Q"] = to_json(s.q);
    return j;
}

inline Json to_json(const ProductProbe& p) {
    Json j;
    j["left"] = to_json(p.left);
    j["right"] = to_json(p.right);
    j["product"] = matrix_rows_json(p.product);
    j["frob_sq"] = p.frob_sq.str();
    j["max_trace"] = p.max_trace.str();
    j["trace_perm"] = to_json(p.trace_perm);
    j["identity_holds"] = p.identity_holds;
    j["saturates"] = p.saturates;
    return j;
}

inline Json to_json(const ProbeReport& r) {
    Json j;
    j["n"] = r.options.n;
    j["samples"] = r.options.samples;
    j["seed"] = r.options.seed;
    j["tol"] = r.options.tol;
    j["candidates"] = r.candidates;
    j["near_saturating"] = r.near_saturating;
    j["verified"] = r.verified;
    Json list = Json::array();
    for (const auto& f : r.findings) {
        Json e;
        e["index"] = f.index;
        e["source"] = to_string(f.source);
        e["float_gap"] = f.float_gap;
        e["reconstructed"] = matrix_rows_json(f.reconstructed);
        e["verdict"] = to_string(f.verdict);
        if (f.form) e["form"] = to_string(*f.form);
        list.push_back(std::move(e));
    }
    j["findings"] = std::move(list);
    return j;
}

} // namespace dsm
