#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "construction.hpp"
#include "epsilon.hpp"
#include "errors.hpp"
#include "place.hpp"
#include "poly.hpp"

namespace polyiter {

/// Q - specialize(P, e)^or: exact, equal to -e T(e, x).
inline ScalarPoly error_polynomial(const ConstructionData& data, const Scalar& e) {
    if (e.is_zero()) throw zero_specialization();
    return data.Q - iterate(specialize_epsilon(data.P, e), data.r);
}

inline ScalarPoly error_polynomial(const ScalarPoly& q, std::size_t r, const Scalar& e) {
    return error_polynomial(build_P(q, r), e);
}

/// max_i |p_i|_v over the coefficient vector; 0 for the zero polynomial.
inline mpq_class sup_norm(const ScalarPoly& p, const Place& v) {
    mpq_class out(0);
    for (const auto& c : p.coeffs()) {
        mpq_class a = absolute_value(c, v);
        if (a > out) out = a;
    }
    return out;
}

struct ConvergenceRow {
    Scalar epsilon;
    Place place = Place::archimedean();
    mpq_class error_norm;
    mpq_class ratio;  // error_norm / |epsilon|_v
};

inline std::vector<ConvergenceRow> convergence_table(const ScalarPoly& q, std::size_t r, const Place& v,
                                                     const std::vector<Scalar>& eps) {
    const ConstructionData data = build_P(q, r);
    std::vector<ConvergenceRow> rows;
    rows.reserve(eps.size());
    for (const auto& e : eps) {
        ConvergenceRow row{e, v, sup_norm(error_polynomial(data, e), v), {}};
        row.ratio = row.error_norm / absolute_value(e, v);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct ApproximationTarget {
    ScalarPoly Q{Field::rationals()};
    std::size_t r = 2;
    std::vector<Place> places;
    mpq_class eta;
};

struct MultiPlaceResult {
    Scalar epsilon;
    std::uint64_t m = 0;        // power of the product of the finite places
    std::uint64_t m_prime = 0;  // power of the auxiliary prime in the denominator
    std::uint64_t auxiliary_prime = 2;
    std::vector<std::pair<Place, mpq_class>> norms;
    std::int64_t deg_P = 0;
    std::int64_t degree_bound = 0;  // max(1, deg Q) + r
    std::uint64_t candidates_tried = 0;
};

struct SearchLimits {
    std::uint64_t max_m = 64;
    std::uint64_t max_m_prime = 512;
    std::uint64_t max_candidates = 20000;
};

/// Single epsilon with ||P_eps^or - Q||_v < eta at every listed place.
/// Candidates eps = (prod of finite places)^m / s^m', s the least prime not
/// among them: m drives the p-adic norms down, m' the archimedean one.
inline MultiPlaceResult find_epsilon_multi_place(const ApproximationTarget& t, const SearchLimits& lim = {}) {
    if (!t.Q.field().is_rational()) throw field_mismatch("multi-place search works over Q");
    if (sgn(t.eta) <= 0) throw error("eta must be positive");
    if (t.places.empty()) throw error("at least one place is required");
    bool has_arch = false;
    mpz_class prod(1);
    for (std::size_t i = 0; i < t.places.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (t.places[i] == t.places[j]) throw error("places must be pairwise distinct");
        if (t.places[i].is_archimedean())
            has_arch = true;
        else
            prod *= static_cast<unsigned long>(t.places[i].prime());
    }
    std::uint64_t s = 2;
    auto is_listed = [&](std::uint64_t p) {
        for (const auto& pl : t.places)
            if (!pl.is_archimedean() && pl.prime() == p) return true;
        return false;
    };
    while (!is_prime_u64(s) || is_listed(s)) ++s;

    const ConstructionData data = build_P(t.Q, t.r);
    MultiPlaceResult res;
    res.auxiliary_prime = s;
    res.deg_P = data.P.degree().is_minus_infinity() ? -1 : data.P.degree().value();
    const std::int64_t dq = t.Q.degree().is_minus_infinity() ? 0 : t.Q.degree().value();
    res.degree_bound = std::max<std::int64_t>(1, dq) + static_cast<std::int64_t>(t.r);

    const std::uint64_t m_first = prod > 1 ? 1 : 0;
    const std::uint64_t m_last = prod > 1 ? lim.max_m : 0;
    const std::uint64_t mp_last = has_arch ? lim.max_m_prime : 0;
    for (std::uint64_t m = m_first; m <= m_last; ++m) {
        mpz_class num;
        mpz_pow_ui(num.get_mpz_t(), prod.get_mpz_t(), m);
        for (std::uint64_t mp = 0; mp <= mp_last; ++mp) {
            if (++res.candidates_tried > lim.max_candidates)
                throw iteration_cap("no epsilon found within " + std::to_string(lim.max_candidates) + " candidates");
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), s, mp);
            const Scalar e(mpq_class(num, den));
            const ScalarPoly err = error_polynomial(data, e);
            std::vector<std::pair<Place, mpq_class>> norms;
            bool ok = true;
            bool arch_ok = true;
            for (const auto& pl : t.places) {
                mpq_class nv = sup_norm(err, pl);
                const bool below = nv < t.eta;
                ok = ok && below;
                if (pl.is_archimedean()) arch_ok = below;
                norms.emplace_back(pl, std::move(nv));
            }
            if (ok) {
                res.epsilon = e;
                res.m = m;
                res.m_prime = mp;
                res.norms = std::move(norms);
                return res;
            }
            // Archimedean already small: only a larger m can help the p-adic places.
            if (arch_ok && m < m_last) break;
        }
    }
    throw iteration_cap("multi-place search exhausted its schedule");
}

} // namespace polyiter
