#pragma once

#include <polyiter/polyiter.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace polyiter::testing {

/// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    /// Small rational or residue; zero allowed.
    Scalar scalar(const Field& f) {
        if (f.is_prime()) return Scalar::from_integer(integer(0, static_cast<std::int64_t>(f.modulus()) - 1), f);
        const auto num = integer(-9, 9);
        const auto den = integer(1, 4);
        return Scalar(mpq_class(num, den));
    }

    Scalar nonzero_scalar(const Field& f) {
        for (;;) {
            Scalar s = scalar(f);
            if (!s.is_zero()) return s;
        }
    }

    /// Polynomial of degree at most max_degree (may be lower or zero).
    ScalarPoly poly(const Field& f, std::size_t max_degree) {
        std::vector<Scalar> c;
        for (std::size_t i = 0; i <= max_degree; ++i) c.push_back(scalar(f));
        return ScalarPoly(f, std::move(c));
    }

    /// Polynomial of degree exactly `degree`.
    ScalarPoly poly_exact(const Field& f, std::size_t degree) {
        std::vector<Scalar> c;
        for (std::size_t i = 0; i < degree; ++i) c.push_back(scalar(f));
        c.push_back(nonzero_scalar(f));
        return ScalarPoly(f, std::move(c));
    }

    LaurentScalar laurent(const Field& f, std::int64_t lo, std::int64_t hi, std::size_t terms) {
        std::vector<LaurentScalar::Term> t;
        for (std::size_t i = 0; i < terms; ++i) t.emplace_back(integer(lo, hi), scalar(f));
        return LaurentScalar::from_terms(std::move(t));
    }

    EpsilonPoly epsilon_poly(const Field& f, std::size_t max_degree, std::int64_t lo, std::int64_t hi) {
        std::vector<LaurentScalar> c;
        for (std::size_t i = 0; i <= max_degree; ++i) c.push_back(laurent(f, lo, hi, 3));
        return EpsilonPoly(f, std::move(c));
    }

    /// r-1 distinct nonzero anchors.
    Anchors anchors(const Field& f, std::size_t r) {
        std::vector<Scalar> v;
        while (v.size() + 1 < r) {
            Scalar s = nonzero_scalar(f);
            bool dup = false;
            for (const auto& a : v) dup = dup || a == s;
            if (!dup) v.push_back(s);
        }
        return Anchors(f, std::move(v));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline Scalar q(long num, long den = 1) { return Scalar(mpq_class(num, den)); }

inline ScalarPoly qpoly(std::initializer_list<long> coeffs) {
    std::vector<Scalar> c;
    for (long v : coeffs) c.push_back(q(v));
    return ScalarPoly(Field::rationals(), std::move(c));
}

inline ScalarPoly fpoly(const Field& f, std::initializer_list<long> coeffs) {
    std::vector<Scalar> c;
    for (long v : coeffs) c.push_back(Scalar::from_integer(v, f));
    return ScalarPoly(f, std::move(c));
}

/// Laurent scalar from {exponent, integer coefficient} pairs over Q.
inline LaurentScalar lq(std::initializer_list<std::pair<std::int64_t, long>> terms) {
    std::vector<LaurentScalar::Term> t;
    for (auto [e, c] : terms) t.emplace_back(e, q(c));
    return LaurentScalar::from_terms(std::move(t));
}

} // namespace polyiter::testing
