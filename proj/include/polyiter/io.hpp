#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "construction.hpp"
#include "epsilon.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "scalar.hpp"
#include "verify.hpp"

namespace polyiter::io {

using json = nlohmann::ordered_json;

/// {"coeffs": ["c0", "c1", ...]}
inline json to_json(const ScalarPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.to_string());
    return json{{"coeffs", coeffs}};
}

/// {"terms": [[k, "c"], ...]}, ascending k.
inline json to_json(const LaurentScalar& l) {
    json terms = json::array();
    for (const auto& [k, c] : l.terms()) terms.push_back(json::array({k, c.to_string()}));
    return json{{"terms", terms}};
}

inline json to_json(const EpsilonPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
    return json{{"coeffs", coeffs}};
}

inline ScalarPoly poly_from_json(const json& j, const Field& f) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error("polynomial JSON needs a \"coeffs\" array");
    std::vector<Scalar> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (c.is_string())
            coeffs.push_back(Scalar::parse(c.get<std::string>(), f));
        else if (c.is_number_integer())
            coeffs.push_back(Scalar::from_integer(c.get<long>(), f));
        else
            throw parse_error("polynomial coefficients must be strings or integers");
    }
    return ScalarPoly(f, std::move(coeffs));
}

inline LaurentScalar laurent_from_json(const json& j, const Field& f) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw parse_error("Laurent JSON needs a \"terms\" array");
    std::vector<LaurentScalar::Term> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
            throw parse_error("Laurent term must be [exponent, \"coefficient\"]");
        terms.emplace_back(t[0].get<std::int64_t>(), Scalar::parse(t[1].get<std::string>(), f));
    }
    return LaurentScalar::from_terms(std::move(terms));
}

inline EpsilonPoly epsilon_poly_from_json(const json& j, const Field& f) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error("epsilon polynomial JSON needs a \"coeffs\" array");
    std::vector<LaurentScalar> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(laurent_from_json(c, f));
    return EpsilonPoly(f, std::move(coeffs));
}

inline json range_json(const std::optional<std::pair<std::int64_t, std::int64_t>>& r) {
    if (!r) return nullptr;
    return json::array({r->first, r->second});
}

inline json to_json(const ConstructionData& d) {
    json anchors = json::array();
    for (const auto& a : d.anchors) anchors.push_back(a.to_string());
    json out;
    out["field"] = d.field.to_string();
    out["r"] = d.r;
    out["n"] = d.n;
    out["Q"] = to_json(d.Q);
    out["anchors"] = anchors;
    out["L"] = to_json(d.L);
    out["R"] = to_json(d.R);
    out["c"] = d.c.to_string();
    out["P"] = to_json(d.P);
    out["deg_P"] = d.P.degree().is_minus_infinity() ? json(nullptr) : json(d.P.degree().value());
    out["residual"] = d.residual ? to_json(*d.residual) : json(nullptr);
    return out;
}

inline ConstructionData construction_from_json(const json& j) {
    try {
        ConstructionData d;
        d.field = Field::parse(j.at("field").get<std::string>());
        d.r = j.at("r").get<std::size_t>();
        d.n = j.at("n").get<std::size_t>();
        d.Q = poly_from_json(j.at("Q"), d.field);
        for (const auto& a : j.at("anchors")) d.anchors.push_back(Scalar::parse(a.get<std::string>(), d.field));
        d.L = poly_from_json(j.at("L"), d.field);
        d.R = poly_from_json(j.at("R"), d.field);
        d.c = Scalar::parse(j.at("c").get<std::string>(), d.field);
        d.P = epsilon_poly_from_json(j.at("P"), d.field);
        if (j.contains("residual") && !j["residual"].is_null())
            d.residual = epsilon_poly_from_json(j["residual"], d.field);
        if (d.r >= 2) (void)d.anchor_set();
        return d;
    } catch (const json::exception& e) {
        throw parse_error(std::string("construction JSON: ") + e.what());
    }
}

inline json to_json(const VerificationReport& r, bool with_timing) {
    json out;
    out["check"] = "key_congruence";
    out["statement"] = "P^or == Q mod eps";
    out["passed"] = r.passed;
    out["mode"] = r.mode;
    out["precision"] = r.precision.to_string();
    out["deg_P"] = r.deg_P;
    out["deg_iterate_bound"] = r.deg_iterate_bound;
    out["deg_iterate"] = r.deg_iterate ? json(*r.deg_iterate) : json(nullptr);
    out["iterate_exponents"] = range_json(r.iterate_exponents);
    out["iterate_terms"] = r.iterate_terms;
    out["residual_exponents"] = range_json(r.residual_exponents);
    if (!r.detail.empty()) out["detail"] = r.detail;
    if (with_timing) out["millis"] = r.millis;
    return out;
}

inline json to_json(const LemmaReport& r, bool with_timing) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["id"] = c.id;
        cj["statement"] = c.statement;
        if (c.k) cj["k"] = c.k;
        if (c.j) cj["j"] = c.j;
        cj["passed"] = c.passed;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    json out;
    out["passed"] = r.passed();
    out["failures"] = r.failures();
    out["checks"] = checks;
    if (with_timing) out["millis"] = r.millis;
    return out;
}

} // namespace polyiter::io
