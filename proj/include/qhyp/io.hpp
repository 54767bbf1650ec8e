#pragma once

#include <json.hpp>

#include "qhyp/collars.hpp"

namespace qhyp {

using json = nlohmann::json;

// Quaternion <-> [w, x, y, z]
inline void to_json(json& j, const Quaternion& q) { j = json::array({q.w, q.x, q.y, q.z}); }
inline void from_json(const json& j, Quaternion& q) {
    if (!j.is_array() || j.size() != 4)
        throw MalformedInput("quaternion: expected a 4-array [w, x, y, z]");
    for (const auto& c : j)
        if (!c.is_number()) throw MalformedInput("quaternion: components must be numbers");
    q = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

// QVector <-> array of quaternion 4-arrays
inline void to_json(json& j, const QVector& v) {
    j = json::array();
    for (const auto& q : v.e) j.push_back(q);
}
inline void from_json(const json& j, QVector& v) {
    if (!j.is_array() || j.size() < 2)
        throw MalformedInput("vector: expected an array of at least 2 quaternions");
    v.e.clear();
    for (const auto& c : j) v.e.push_back(c.get<Quaternion>());
}

// ProjPoint <-> {"lift": [...]}; the kind is recomputed from the lift.
inline void to_json(json& j, const ProjPoint& p) { j = json{{"lift", p.lift}}; }
inline void from_json(const json& j, ProjPoint& p) {
    if (!j.is_object() || !j.contains("lift")) throw MalformedInput("point: expected {\"lift\": [...]}");
    p = classify_point(j.at("lift").get<QVector>());
}

// Raw matrix <-> {"n": n, "entries": [[q, ...], ...]} row-major
inline void to_json(json& j, const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(m.at(i, k));
        rows.push_back(row);
    }
    j = json{{"n", m.size() - 1}, {"entries", rows}};
}
inline void from_json(const json& j, QMat& m) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw MalformedInput("matrix: expected {\"n\": n, \"entries\": [[...], ...]}");
    const int n = j.at("n").get<int>();
    if (n < 1) throw MalformedInput("matrix: n must be >= 1");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n + 1)
        throw MalformedInput("matrix: expected n + 1 rows");
    m = QMat(n + 1);
    for (int i = 0; i <= n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
            throw MalformedInput("matrix: expected n + 1 entries per row");
        for (int k = 0; k <= n; ++k) m.at(i, k) = row[k].get<Quaternion>();
    }
}

inline void to_json(json& j, const SpMatrix& g) { to_json(j, g.raw()); }

/// Parse and validate in one step.
inline SpMatrix sp_from_json(const json& j) { return SpMatrix::validate(j.get<QMat>()); }

// AngleProfile <-> {"angles": [...], "beta_n": b, "l": l}
inline void to_json(json& j, const AngleProfile& p) {
    j = json{{"angles", p.angles}, {"beta_n", p.beta_n}, {"l", p.length}};
}
inline void from_json(const json& j, AngleProfile& p) {
    if (!j.is_object() || !j.contains("angles") || !j.contains("beta_n") || !j.contains("l"))
        throw MalformedInput("profile: expected {\"angles\", \"beta_n\", \"l\"}");
    p.angles = j.at("angles").get<std::vector<double>>();
    p.beta_n = j.at("beta_n").get<double>();
    p.length = j.at("l").get<double>();
}

inline void to_json(json& j, const LoxodromicData& d) {
    j = json{{"Mg", d.mg},         {"delta", d.delta},
             {"l", d.length},      {"angles", d.angles},
             {"beta_n", d.beta_n}, {"fixed_attract", d.fixed_attract},
             {"fixed_repel", d.fixed_repel}};
}

inline void to_json(json& j, const TestReport& r) {
    j = json{{"condition", to_string(r.condition)},
             {"lhs", r.lhs},
             {"rhs", r.rhs},
             {"triggered", r.triggered},
             {"conclusion", r.conclusion == TestConclusion::ElementaryOrNonDiscrete
                                ? "ElementaryOrNonDiscrete"
                                : "Inconclusive"}};
}

inline void to_json(json& j, const IterationStep& s) {
    j = json{{"k", s.k}, {"ad", s.ad_abs}, {"bc", s.bc_abs}};
    if (s.bound)
        j["bound"] = *s.bound;
    else
        j["bound"] = nullptr;
}

inline void to_json(json& j, const IterationTrace& t) {
    j = json{{"verdict", to_string(t.verdict)},
             {"note", t.note},
             {"Mg", t.mg},
             {"max_k", t.max_k},
             {"certificate", t.certificate},
             {"steps", t.steps}};
    if (t.rcond_lhs) j["rcond_lhs"] = *t.rcond_lhs;
    if (t.rcond_rhs) j["rcond_rhs"] = *t.rcond_rhs;
}

inline void to_json(json& j, const CollarResult& c) {
    j = json{{"Mg", c.mg}, {"cosh2r", c.cosh2r}, {"r", c.r}};
}

inline void to_json(json& j, const InequalityCheck& c) {
    j = json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"margin", c.margin}};
}

inline void to_json(json& j, const DisjointnessReport& r) {
    j = json{{"collar_g", r.collar_g},
             {"collar_h", r.collar_h},
             {"cross_ratio_x", r.cross_ratio_x},
             {"cross_ratio_y", r.cross_ratio_y},
             {"cross_ratio_sum", r.cross_ratio_sum},
             {"distance_bound", r.distance_bound},
             {"am_gm", r.am_gm},
             {"closeness_step", r.closeness_step},
             {"jorgensen_step", r.jorgensen_step},
             {"cosh_identity", r.cosh_identity},
             {"tubes_disjoint", r.tubes_disjoint}};
}

inline void to_json(json& j, const TubeViolation& v) {
    j = json{{"word", v.word},
             {"cross_ratio_bound", v.cross_ratio_bound},
             {"oracle_distance", v.oracle_distance}};
}

inline void to_json(json& j, const TubeCheckReport& r) {
    j = json{{"words_enumerated", r.words_enumerated},
             {"distinct_elements", r.distinct_elements},
             {"skipped_axis", r.skipped_axis},
             {"checked", r.checked},
             {"ok_cheap", r.ok_cheap},
             {"ok_oracle", r.ok_oracle},
             {"required_distance", r.required_distance},
             {"violations", r.violations},
             {"pass", r.pass}};
    if (r.checked > 0) j["min_established_distance"] = r.min_established_distance;
}

inline void to_json(json& j, const CornerModuli& t) {
    j = json{{"bc", t.bc_abs}, {"ad", t.ad_abs}};
    if (t.bc_over_ad)
        j["bc_over_ad"] = *t.bc_over_ad;
    else
        j["bc_over_ad"] = nullptr;
}

inline void to_json(json& j, const BlockInequalities& r) {
    j = json{{"checks", json::array()}, {"all_hold", r.all_hold}};
    for (const auto& c : r.checks) j["checks"].push_back(c);
}

}  // namespace qhyp
