#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "field.hpp"
#include "order.hpp"
#include "ring.hpp"
#include "scalar.hpp"

namespace polyiter {

/// Dense univariate polynomial, ascending coefficients, never stores a
/// trailing zero. The zero polynomial has no coefficients and degree -inf.
template <coefficient_ring R>
class Poly {
public:
    using coefficient_type = R;

    explicit Poly(Field f) : field_(f) {}

    Poly(Field f, std::vector<R> coeffs) : field_(f), c_(std::move(coeffs)) { normalize(); }

    static Poly constant(Field f, R c) { return Poly(f, std::vector<R>{std::move(c)}); }

    static Poly monomial(Field f, R c, std::size_t k) {
        std::vector<R> v(k + 1, ring_traits<R>::zero(f));
        v[k] = std::move(c);
        return Poly(f, std::move(v));
    }

    /// The identity polynomial x.
    static Poly identity(Field f) { return monomial(f, ring_traits<R>::one(f), 1); }

    const Field& field() const noexcept { return field_; }

    Degree degree() const noexcept {
        return c_.empty() ? Degree::minus_infinity() : Degree(static_cast<std::int64_t>(c_.size()) - 1);
    }

    bool is_zero() const noexcept { return c_.empty(); }

    /// Number of stored coefficients (degree + 1, or 0).
    std::size_t size() const noexcept { return c_.size(); }

    std::span<const R> coeffs() const noexcept { return c_; }

    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_traits<R>::zero(field_); }

    const R& leading() const { return c_.back(); }

    Poly operator-() const {
        Poly out(field_);
        out.c_.reserve(c_.size());
        for (const auto& c : c_) out.c_.push_back(-c);
        return out;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ring_traits<R>::zero(field_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        normalize();
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ring_traits<R>::zero(field_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        normalize();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out(a.field_);
        if (a.is_zero() || b.is_zero()) return out;
        out.c_.assign(a.c_.size() + b.c_.size() - 1, ring_traits<R>::zero(a.field_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (ring_traits<R>::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
        }
        out.normalize();
        return out;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Coefficient-wise scaling by a ring element.
    friend Poly operator*(const R& s, const Poly& p) {
        Poly out(p.field_);
        out.c_.reserve(p.c_.size());
        for (const auto& c : p.c_) out.c_.push_back(s * c);
        out.normalize();
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    /// Horner evaluation in any algebra S over R (S = R included).
    template <class S = R>
    S evaluate(const S& at) const {
        S acc = ring_traits<S>::zero(field_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + embed<S, R>::apply(*it, field_);
        return acc;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (ring_traits<R>::is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i] << ")";
            if (i >= 1) os << "*x";
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    void normalize() {
        while (!c_.empty() && ring_traits<R>::is_zero(c_.back())) c_.pop_back();
    }

    Field field_;
    std::vector<R> c_;
};

template <coefficient_ring R>
struct ring_traits<Poly<R>> {
    static Poly<R> zero(const Field& f) { return Poly<R>(f); }
    static Poly<R> one(const Field& f) { return Poly<R>::constant(f, ring_traits<R>::one(f)); }
    static Poly<R> from_integer(const mpz_class& m, const Field& f) {
        return Poly<R>::constant(f, ring_traits<R>::from_integer(m, f));
    }
    static bool is_zero(const Poly<R>& p) noexcept { return p.is_zero(); }
};

/// Constants of a polynomial ring over an R-algebra.
template <coefficient_ring S, class From>
    requires(!std::is_same_v<Poly<S>, From>)
struct embed<Poly<S>, From> {
    static Poly<S> apply(const From& v, const Field& f) { return Poly<S>::constant(f, embed<S, From>::apply(v, f)); }
};

/// outer(inner(x)) by Horner accumulation.
template <coefficient_ring R>
Poly<R> compose(const Poly<R>& outer, const Poly<R>& inner) {
    return outer.template evaluate<Poly<R>>(inner);
}

/// k-fold self-composition; iterate(P, 0) is x.
template <coefficient_ring R>
Poly<R> iterate(const Poly<R>& p, std::uint64_t k) {
    Poly<R> out = Poly<R>::identity(p.field());
    for (std::uint64_t i = 0; i < k; ++i) out = compose(p, out);
    return out;
}

/// j-th Hasse derivative: sum_k p_k C(k, j) x^(k-j), binomials mapped into R.
template <coefficient_ring R>
Poly<R> hasse_derivative(const Poly<R>& p, std::size_t j) {
    if (p.size() <= j) return Poly<R>(p.field());
    std::vector<R> out;
    out.reserve(p.size() - j);
    for (std::size_t k = j; k < p.size(); ++k)
        out.push_back(ring_traits<R>::from_integer(binomial(k, j), p.field()) * p.coeffs()[k]);
    return Poly<R>(p.field(), std::move(out));
}

/// Classical derivative d/dx.
template <coefficient_ring R>
Poly<R> derivative(const Poly<R>& p) {
    if (p.size() <= 1) return Poly<R>(p.field());
    std::vector<R> out;
    out.reserve(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        out.push_back(ring_traits<R>::from_integer(mpz_class(static_cast<unsigned long>(k)), p.field()) *
                      p.coeffs()[k]);
    return Poly<R>(p.field(), std::move(out));
}

/// P(a*x): coefficient k is multiplied by a^k.
template <coefficient_ring R>
Poly<R> scale_argument(const Poly<R>& p, const R& a) {
    std::vector<R> out;
    out.reserve(p.size());
    R power = ring_traits<R>::one(p.field());
    for (const auto& c : p.coeffs()) {
        out.push_back(c * power);
        power = power * a;
    }
    return Poly<R>(p.field(), std::move(out));
}

using ScalarPoly = Poly<Scalar>;

/// Ascending coefficient list of scalar literals, e.g. "1,0,-1/2".
inline ScalarPoly parse_poly(std::string_view text, const Field& f) {
    std::vector<Scalar> coeffs;
    std::size_t start = 0;
    std::string s(text);
    if (s.find_first_not_of(" \t") == std::string::npos) return ScalarPoly(f);
    while (true) {
        auto comma = s.find(',', start);
        coeffs.push_back(Scalar::parse(s.substr(start, comma - start), f));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ScalarPoly(f, std::move(coeffs));
}

} // namespace polyiter
