#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "construction.hpp"
#include "epsilon.hpp"
#include "errors.hpp"

namespace polyiter {

enum class IterateMode { Auto, Exact, Windowed };

struct VerifyOptions {
    IterateMode mode = IterateMode::Auto;
    /// Auto picks the exact route when the estimated number of Laurent terms
    /// of P^or is at most this.
    double exact_term_budget = 5000;
    /// Windowed route: the window is doubled at most this many times when the
    /// tracked precision does not reach the requested modulus.
    int max_window_doublings = 6;
};

struct VerificationReport {
    bool passed = false;
    std::string mode;              // "exact" or "windowed"
    Order precision;               // P^or known modulo eps^precision
    std::int64_t deg_P = -1;       // deg_x P
    std::int64_t deg_iterate_bound = -1;  // (deg_x P)^r
    std::optional<std::int64_t> deg_iterate;  // exact mode only
    std::optional<std::pair<std::int64_t, std::int64_t>> iterate_exponents;  // of the computed part
    std::optional<EpsilonPoly> residual;  // exact mode only
    std::optional<std::pair<std::int64_t, std::int64_t>> residual_exponents;
    std::size_t iterate_terms = 0;
    double millis = 0;
    std::string detail;
};

struct LemmaCheck {
    std::string id;
    std::string statement;
    std::int64_t k = 0;  // orbit index, 0 when not applicable
    std::int64_t j = 0;  // derivative order, 0 when not applicable
    bool passed = false;
    std::string detail;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    double millis = 0;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.passed ? 0 : 1;
        return n;
    }
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// First x-coefficient of A - B with an eps-term below l, rendered for reports.
inline std::string congruence_diff(const EpsilonPoly& a, const EpsilonPoly& b, std::int64_t l) {
    const EpsilonPoly d = a - b;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& c = d.coeffs()[i];
        if (c.min_exponent() < Order(l)) {
            std::ostringstream os;
            os << "x^" << i << " coefficient of the difference is " << c << " (needs order >= " << l << ")";
            return os.str();
        }
    }
    return {};
}

inline std::int64_t deg_or_minus_one(Degree d) { return d.is_minus_infinity() ? -1 : d.value(); }

inline std::int64_t ipow_checked(std::int64_t base, std::size_t e) {
    std::int64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) out = checked_mul(out, base);
    return out;
}

/// P, ..., P^ok with P^oi known at least modulo eps^need(i), i = 1..k.
template <class Need>
std::vector<WindowedEpsilonPoly> windowed_iterates(const EpsilonPoly& p, std::size_t k, std::int64_t start_window,
                                                   Need need, int max_doublings) {
    std::int64_t window = std::max<std::int64_t>(start_window, 1);
    for (int attempt = 0;; ++attempt) {
        auto its = iterates_expanded(p, k, Order(window));
        bool enough = true;
        for (std::size_t i = 0; i < its.size(); ++i) enough = enough && its[i].precision() >= Order(need(i + 1));
        if (enough || attempt >= max_doublings) return its;
        window = checked_mul(window, 2);
    }
}

} // namespace detail

/// Computes P^or and checks P^or == Q mod eps, extracting T with
/// P^or = Q + eps T when the exact route is used.
inline VerificationReport verify_key_congruence(ConstructionData& data, const VerifyOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    const EpsilonPoly target = lift(data.Q);
    rep.deg_P = detail::deg_or_minus_one(data.P.degree());
    if (rep.deg_P >= 0) rep.deg_iterate_bound = detail::ipow_checked(rep.deg_P, data.r);

    bool exact = opt.mode == IterateMode::Exact;
    if (opt.mode == IterateMode::Auto) exact = estimate_iterate_terms(data.P, data.r) <= opt.exact_term_budget;

    WindowedEpsilonPoly iterate(EpsilonPoly(data.field));
    if (exact) {
        rep.mode = "exact";
        iterate = iterates_expanded(data.P, data.r).back();
    } else {
        rep.mode = "windowed";
        const std::int64_t start_window = std::max<std::int64_t>(data.base_exponent() + 1, 1);
        iterate = detail::windowed_iterates(data.P, data.r, start_window,
                                            [&](std::size_t i) { return i == data.r ? 1 : 0; },
                                            opt.max_window_doublings)
                      .back();
    }
    rep.precision = iterate.precision();
    rep.iterate_exponents = exponent_range(iterate.known());
    rep.iterate_terms = term_count(iterate.known());

    switch (iterate.congruent_mod(target, 1)) {
    case WindowedEpsilonPoly::Verdict::Yes:
        rep.passed = true;
        break;
    case WindowedEpsilonPoly::Verdict::No:
        rep.detail = detail::congruence_diff(iterate.known(), target, 1);
        break;
    case WindowedEpsilonPoly::Verdict::Unknown:
        rep.detail = "tracked precision " + iterate.precision().to_string() + " too low to decide";
        break;
    }

    if (iterate.is_exact()) {
        rep.deg_iterate = detail::deg_or_minus_one(iterate.known().degree());
        if (rep.passed) {
            EpsilonPoly t = shift_epsilon(iterate.known() - target, -1);
            rep.residual_exponents = exponent_range(t);
            rep.residual = t;
            data.residual = std::move(t);
        }
    }
    rep.millis = detail::elapsed_ms(start);
    return rep;
}

/// Machine check of every intermediate congruence behind P^or == Q mod eps.
inline LemmaReport verify_lemma_suite(const ConstructionData& data, const VerifyOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    LemmaReport rep;
    auto add = [&](std::string id, std::string statement, std::int64_t k, std::int64_t j, bool ok,
                   std::string detail = {}) {
        rep.checks.push_back(LemmaCheck{std::move(id), std::move(statement), k, j, ok, std::move(detail)});
    };

    const Field& f = data.field;
    const auto r = static_cast<std::int64_t>(data.r);
    const auto n = static_cast<std::int64_t>(data.n);
    const std::int64_t step = 2 * n - 3;
    const std::int64_t base = data.base_exponent();

    if (data.is_identity_word()) {
        add("identity_word", "r = 1: P equals Q", 0, 0, data.P == lift(data.Q));
        rep.millis = detail::elapsed_ms(start);
        return rep;
    }

    const Anchors anchors = data.anchor_set();
    const ScalarPoly dR = derivative(data.R);
    const Scalar zero = Scalar::zero(f);
    const Scalar c_inv = data.c.invert();
    const Scalar R0 = data.R.evaluate(zero);

    // Interpolation data.
    {
        bool ok = data.L.evaluate(zero) == anchors.at(1);
        std::string why = ok ? "" : "L(0) != a_1";
        for (std::size_t k = 1; k < data.r && ok; ++k) {
            ok = data.L.evaluate(anchors.at(k)) == anchors.at(k + 1);
            if (!ok) why = "L(a_" + std::to_string(k) + ") != a_" + std::to_string(k + 1);
        }
        for (std::size_t j = 1; j < data.n && ok; ++j) {
            ok = hasse_derivative(data.L, j).evaluate(zero).is_zero();
            if (!ok) why = "Hasse derivative of order " + std::to_string(j) + " of L at 0 is nonzero";
        }
        add("interpolation", "L(0)=a_1, L(a_k)=a_{k+1}, L^[j](0)=0 for 1<=j<=n-1", 0, 0, ok, why);

        bool routes = build_L_linear_system(anchors, data.n) == data.L && build_L_lagrange(anchors, data.n) == data.L;
        add("interpolation_routes", "L agrees with both the linear-system and Lagrange constructions", 0, 0, routes);

        bool roots = R0 == [&] {
            Scalar prod = Scalar::one(f);
            for (const auto& a : anchors.values()) prod *= a;
            return prod;
        }();
        for (std::size_t k = 1; k < data.r; ++k) roots = roots && data.R.evaluate(anchors.at(k)).is_zero();
        roots = roots && data.R == build_R(anchors);
        add("r_polynomial", "R = prod (a_k - x): R(a_k)=0, R(0)=prod a_k", 0, 0, roots);

        add("c_constant", "c = R(0)^(n+1) prod R'(a_l)", 0, 0, data.c == build_c(anchors, data.n));
        const Scalar norm = orbit_factor(anchors, data.n, data.c, data.r);
        add("normalization", "c^-1 R(0) prod R'(a_l) a_l^n = 1", 0, 0, norm.is_one(),
            norm.is_one() ? "" : "value " + norm.to_string());
    }

    // Degrees and the formula itself.
    {
        const std::int64_t dP = detail::deg_or_minus_one(data.P.degree());
        const std::int64_t dQ = detail::deg_or_minus_one(data.Q.degree());
        bool ok = dP <= n + r - 1 && detail::deg_or_minus_one(data.L.degree()) <= n + r - 2 &&
                  detail::deg_or_minus_one(data.R.degree()) == r - 1 && dQ <= n - 1 && n >= 2;
        if (n == static_cast<std::int64_t>(default_n(data.Q))) ok = ok && dP <= std::max<std::int64_t>(1, dQ) + r;
        add("degree_bounds", "deg P <= n+r-1, deg L <= n+r-2, deg R = r-1, deg Q <= n-1", 0, 0, ok,
            "deg P = " + std::to_string(dP));
        const EpsilonPoly rebuilt = assemble_P(data.Q, data.r, data.n, data.L, data.R, data.c);
        add("witness_formula", "P matches its defining formula term by term", 0, 0, rebuilt == data.P,
            rebuilt == data.P ? "" : detail::congruence_diff(data.P, rebuilt, INT64_MAX / 4));
    }

    // P' at the orbit points eps^-2r a_k.
    const EpsilonPoly dP = hasse_derivative(data.P, 1);
    for (std::int64_t k = 1; k < r; ++k) {
        const Scalar ak = anchors.at(static_cast<std::size_t>(k));
        const LaurentScalar point = LaurentScalar::monomial(ak, -2 * r);
        const LaurentScalar lhs = evaluate_x_at_laurent(dP, point);
        const LaurentScalar rhs = LaurentScalar::monomial(dR.evaluate(ak) * ak.pow(data.n), 3 - 2 * n);
        const bool ok = (lhs - rhs).min_exponent() >= Order(4 - 2 * n);
        add("derivative_at_orbit", "P'(eps^-2r a_k) == eps^(3-2n) R'(a_k) a_k^n mod eps^(4-2n)", k, 0, ok,
            ok ? "" : "P'(eps^-2r a_k) = " + lhs.to_string());
    }

    // Orders of all Hasse derivatives at the orbit points.
    const std::int64_t dPdeg = detail::deg_or_minus_one(data.P.degree());
    for (std::int64_t k = 1; k <= r; ++k) {
        const LaurentScalar point = LaurentScalar::monomial(anchors.at(static_cast<std::size_t>(k)), -2 * r);
        for (std::int64_t j = 1; j <= dPdeg; ++j) {
            const Order ord = evaluate_x_at_laurent(hasse_derivative(data.P, static_cast<std::size_t>(j)), point)
                                  .min_exponent();
            const std::int64_t bound = 2 * r * (j - 1) - 2 * n + 3;
            add("hasse_order_at_orbit", "ord P^[j](eps^-2r a_k) >= 2r(j-1)-2n+3", k, j, ord >= Order(bound),
                "order " + ord.to_string() + ", bound " + std::to_string(bound));
        }
    }

    // Exponent function h(j) = 2r(j-1)-2n+3 + j(r-k)(2n-3): strictly increasing,
    // and h(j) >= (r-k-1)(2n-3)+1 for j >= 2.
    for (std::int64_t k = 1; k < r; ++k) {
        auto h = [&](std::int64_t j) { return 2 * r * (j - 1) - 2 * n + 3 + j * (r - k) * step; };
        bool ok = true;
        for (std::int64_t j = 1; j <= std::max<std::int64_t>(dPdeg, 2); ++j) {
            ok = ok && h(j + 1) > h(j);
            if (j >= 2) ok = ok && h(j) >= (r - k - 1) * step + 1;
        }
        add("orbit_exponent_growth", "h(j) strictly increasing with h(j) >= (r-k-1)(2n-3)+1 for j >= 2", k, 0, ok);
    }

    // First iterate.
    {
        const EpsilonPoly expected =
            EpsilonPoly::constant(f, LaurentScalar::monomial(anchors.at(1), -2 * r)) +
            shift_epsilon(lift(c_inv * R0 * data.Q), base);
        const bool ok = congruent_mod(data.P, expected, base + 1);
        add("first_iterate", "P == eps^-2r a_1 + eps^((r-1)(2n-3)) Q c^-1 R(0) mod eps^((r-1)(2n-3)+1)", 1, 0, ok,
            ok ? "" : detail::congruence_diff(data.P, expected, base + 1));
    }

    // Orbit of iterates, k = 1..r.
    {
        auto need = [&](std::size_t k) { return (r - static_cast<std::int64_t>(k)) * step + 1; };
        const bool exact =
            opt.mode == IterateMode::Exact ||
            (opt.mode == IterateMode::Auto && estimate_iterate_terms(data.P, data.r) <= opt.exact_term_budget);
        const auto its = exact ? iterates_expanded(data.P, data.r)
                               : detail::windowed_iterates(data.P, data.r, base + 1, need, opt.max_window_doublings);
        for (std::int64_t k = 1; k <= r; ++k) {
            const auto idx = static_cast<std::size_t>(k);
            const std::int64_t mod = need(idx);
            const EpsilonPoly expected =
                EpsilonPoly::constant(f, LaurentScalar::monomial(anchors.at(idx), -2 * r)) +
                shift_epsilon(lift(orbit_factor(anchors, data.n, data.c, idx) * data.Q), (r - k) * step);
            const auto verdict = its[idx - 1].congruent_mod(expected, mod);
            std::string why;
            if (verdict == WindowedEpsilonPoly::Verdict::No)
                why = detail::congruence_diff(its[idx - 1].known(), expected, mod);
            else if (verdict == WindowedEpsilonPoly::Verdict::Unknown)
                why = "tracked precision " + its[idx - 1].precision().to_string() + " below " + std::to_string(mod);
            add("orbit_iterate",
                "P^ok == eps^-2r a_k + eps^((r-k)(2n-3)) Q c^-1 R(0) prod_{l<k} R'(a_l) a_l^n mod eps^((r-k)(2n-3)+1)",
                k, 0, verdict == WindowedEpsilonPoly::Verdict::Yes, why);
        }
    }

    rep.millis = detail::elapsed_ms(start);
    return rep;
}

} // namespace polyiter
