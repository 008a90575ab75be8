#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "order.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace polyiter {

/// Polynomial in x over k[eps, eps^-1].
using EpsilonPoly = Poly<LaurentScalar>;

inline EpsilonPoly lift(const ScalarPoly& p) {
    std::vector<LaurentScalar> out;
    out.reserve(p.size());
    for (const auto& c : p.coeffs()) out.emplace_back(c);
    return EpsilonPoly(p.field(), std::move(out));
}

/// eps^k as a Laurent scalar.
inline LaurentScalar eps_power(const Field& f, std::int64_t k) { return LaurentScalar::monomial(Scalar::one(f), k); }

/// Minimum epsilon-exponent over all x-coefficients; +inf for the zero polynomial.
inline Order min_exponent(const EpsilonPoly& a) {
    Order out = Order::infinity();
    for (const auto& c : a.coeffs()) out = min(out, c.min_exponent());
    return out;
}

/// Least and greatest epsilon-exponents present, if any.
inline std::optional<std::pair<std::int64_t, std::int64_t>> exponent_range(const EpsilonPoly& a) {
    std::optional<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& c : a.coeffs()) {
        if (c.is_zero()) continue;
        const std::int64_t lo = c.min_exponent().value();
        const std::int64_t hi = *c.max_exponent();
        if (!out)
            out = {lo, hi};
        else
            out = std::pair{std::min(out->first, lo), std::max(out->second, hi)};
    }
    return out;
}

inline std::size_t term_count(const EpsilonPoly& a) {
    std::size_t n = 0;
    for (const auto& c : a.coeffs()) n += c.term_count();
    return n;
}

/// A == B mod eps^l: every x-coefficient of A - B lies in eps^l k[eps].
inline bool congruent_mod(const EpsilonPoly& a, const EpsilonPoly& b, std::int64_t l) {
    return min_exponent(a - b) >= Order(l);
}

/// eps^k * A.
inline EpsilonPoly shift_epsilon(const EpsilonPoly& a, std::int64_t k) {
    std::vector<LaurentScalar> out;
    out.reserve(a.size());
    for (const auto& c : a.coeffs()) out.push_back(c.shifted(k));
    return EpsilonPoly(a.field(), std::move(out));
}

/// A(eps^k x).
inline EpsilonPoly scale_x_by_eps(const EpsilonPoly& a, std::int64_t k) {
    std::vector<LaurentScalar> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(a.coeffs()[i].shifted(detail::checked_mul(k, static_cast<std::int64_t>(i))));
    return EpsilonPoly(a.field(), std::move(out));
}

/// Substitute eps = e in every coefficient.
inline ScalarPoly specialize_epsilon(const EpsilonPoly& a, const Scalar& e) {
    if (e.is_zero() && min_exponent(a) < Order(0)) throw zero_specialization();
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (const auto& c : a.coeffs()) out.push_back(c.specialize(e));
    return ScalarPoly(a.field(), std::move(out));
}

/// Horner evaluation of A at x = v inside k[eps, eps^-1].
inline LaurentScalar evaluate_x_at_laurent(const EpsilonPoly& a, const LaurentScalar& v) { return a.evaluate(v); }

/// Coefficient of eps^k in each x-coefficient, as a polynomial over the base field.
inline ScalarPoly epsilon_coefficient(const EpsilonPoly& a, std::int64_t k) {
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (const auto& c : a.coeffs()) out.push_back(c.coeff(k).value_or(Scalar::zero(a.field())));
    return ScalarPoly(a.field(), std::move(out));
}

/// Drop every term with epsilon-exponent >= cap.
inline EpsilonPoly truncate_epsilon(const EpsilonPoly& a, Order cap) {
    if (cap.is_infinite()) return a;
    std::vector<LaurentScalar> out;
    out.reserve(a.size());
    for (const auto& c : a.coeffs()) out.push_back(c.truncated(cap));
    return EpsilonPoly(a.field(), std::move(out));
}

/// A value of k[eps, eps^-1][x] known only modulo eps^precision: the true
/// value equals `known` plus eps^precision times some element of k[eps][x]
/// (of unbounded x-degree). precision = +inf means exact.
///
/// Products use prec(AB) = min(prec_A + ord B, prec_B + ord A, prec_A + prec_B),
/// which is sound for any inputs, including negative orders.
class WindowedEpsilonPoly {
public:
    explicit WindowedEpsilonPoly(EpsilonPoly exact) : known_(std::move(exact)), precision_(Order::infinity()) {}

    WindowedEpsilonPoly(EpsilonPoly known, Order precision)
        : known_(truncate_epsilon(known, precision)), precision_(precision) {}

    const EpsilonPoly& known() const noexcept { return known_; }
    Order precision() const noexcept { return precision_; }
    bool is_exact() const noexcept { return precision_.is_infinite(); }
    const Field& field() const noexcept { return known_.field(); }

    /// Lower bound on the true epsilon-order of the value.
    Order order_bound() const noexcept { return min(min_exponent(known_), precision_); }

    WindowedEpsilonPoly truncated(Order cap) const { return WindowedEpsilonPoly(known_, min(precision_, cap)); }

    friend WindowedEpsilonPoly operator+(const WindowedEpsilonPoly& a, const WindowedEpsilonPoly& b) {
        return WindowedEpsilonPoly(a.known_ + b.known_, min(a.precision_, b.precision_));
    }

    friend WindowedEpsilonPoly operator-(const WindowedEpsilonPoly& a, const WindowedEpsilonPoly& b) {
        return WindowedEpsilonPoly(a.known_ - b.known_, min(a.precision_, b.precision_));
    }

    friend WindowedEpsilonPoly operator*(const WindowedEpsilonPoly& a, const WindowedEpsilonPoly& b) {
        const Order prec = min(min(a.precision_ + min_exponent(b.known_), b.precision_ + min_exponent(a.known_)),
                               a.precision_ + b.precision_);
        return WindowedEpsilonPoly(multiply_below(a.known_, b.known_, prec), prec);
    }

    enum class Verdict { Yes, No, Unknown };

    /// Decides value == target mod eps^l when the tracked precision allows it.
    Verdict congruent_mod(const EpsilonPoly& target, std::int64_t l) const {
        const Order diff = min_exponent(known_ - target);
        if (Order(l) <= precision_) return diff >= Order(l) ? Verdict::Yes : Verdict::No;
        // Terms below the precision are exact; one below l settles it.
        if (diff < precision_) return Verdict::No;
        return Verdict::Unknown;
    }

private:
    static EpsilonPoly multiply_below(const EpsilonPoly& a, const EpsilonPoly& b, Order cap) {
        if (a.is_zero() || b.is_zero()) return EpsilonPoly(a.field());
        std::vector<LaurentScalar> out(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.coeffs()[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b.coeffs()[j].is_zero()) continue;
                out[i + j] += LaurentScalar::multiply(a.coeffs()[i], b.coeffs()[j], cap);
            }
        }
        return EpsilonPoly(a.field(), std::move(out));
    }

    EpsilonPoly known_;
    Order precision_;
};

/// outer(inner) for exact outer, re-expanded around the polar part s of the
/// inner constant coefficient:
///     outer(s + J) = sum_j outer^[j](s) J^j.
/// The expansion is an identity; it keeps the Horner accumulators free of the
/// large negative orders that plain Horner builds up through powers of s.
/// Every intermediate is truncated at `cap`; precision tracking keeps the
/// result sound.
inline WindowedEpsilonPoly compose_expanded(const EpsilonPoly& outer, const WindowedEpsilonPoly& inner,
                                            Order cap = Order::infinity()) {
    const Field& f = outer.field();
    if (outer.is_zero()) return WindowedEpsilonPoly(EpsilonPoly(f));

    std::vector<LaurentScalar::Term> polar;
    if (!inner.known().is_zero()) {
        for (const auto& t : inner.known().coeffs()[0].terms()) {
            if (t.first >= 0) break;
            polar.push_back(t);
        }
    }
    const LaurentScalar shift = LaurentScalar::from_terms(polar);
    const WindowedEpsilonPoly rest = inner - WindowedEpsilonPoly(EpsilonPoly::constant(f, shift));

    const std::size_t d = outer.size() - 1;
    auto taylor_coeff = [&](std::size_t j) {
        return WindowedEpsilonPoly(EpsilonPoly::constant(f, hasse_derivative(outer, j).evaluate(shift)));
    };
    WindowedEpsilonPoly acc = taylor_coeff(d).truncated(cap);
    for (std::size_t j = d; j-- > 0;) acc = (acc * rest + taylor_coeff(j)).truncated(cap);
    return acc;
}

/// P, P^o2, ..., P^ok, each computed modulo eps^cap (exact when cap = +inf).
inline std::vector<WindowedEpsilonPoly> iterates_expanded(const EpsilonPoly& p, std::uint64_t k,
                                                          Order cap = Order::infinity()) {
    std::vector<WindowedEpsilonPoly> out;
    if (k == 0) return out;
    out.push_back(WindowedEpsilonPoly(p).truncated(cap));
    for (std::uint64_t i = 1; i < k; ++i) out.push_back(compose_expanded(p, out.back(), cap));
    return out;
}

/// Upper bound on the number of Laurent terms of P^ok computed by plain
/// Horner, from exponent intervals alone (cancellation ignored).
inline double estimate_iterate_terms(const EpsilonPoly& p, std::uint64_t k) {
    struct Span {
        std::int64_t lo, hi;
        bool empty;
    };
    using IPoly = std::vector<Span>;
    auto widen = [](Span& s, const Span& t) {
        if (t.empty) return;
        if (s.empty) {
            s = t;
            return;
        }
        s.lo = std::min(s.lo, t.lo);
        s.hi = std::max(s.hi, t.hi);
    };
    IPoly base;
    for (const auto& c : p.coeffs()) {
        if (c.is_zero())
            base.push_back({0, 0, true});
        else
            base.push_back({c.min_exponent().value(), *c.max_exponent(), false});
    }
    if (base.empty() || k == 0) return 0.0;
    auto mul = [&](const IPoly& a, const IPoly& b) {
        IPoly out(a.size() + b.size() - 1, Span{0, 0, true});
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].empty) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j].empty) continue;
                widen(out[i + j], Span{a[i].lo + b[j].lo, a[i].hi + b[j].hi, false});
            }
        }
        return out;
    };
    IPoly it = base;
    for (std::uint64_t step = 1; step < k; ++step) {
        if (it.size() > 100000) return 1e18;
        IPoly acc{base.back()};
        for (std::size_t i = base.size() - 1; i-- > 0;) {
            acc = mul(acc, it);
            widen(acc[0], base[i]);
        }
        it = std::move(acc);
    }
    double total = 0;
    for (const auto& s : it)
        if (!s.empty) total += static_cast<double>(s.hi - s.lo + 1);
    return total;
}

} // namespace polyiter
