#pragma once

#include <gmpxx.h>

#include "field.hpp"
#include "scalar.hpp"

namespace polyiter {

/// Customization point describing a commutative ring whose elements are
/// built from a Field descriptor. Specialized for Scalar, LaurentScalar and
/// Poly<R>.
template <class R>
struct ring_traits;

template <>
struct ring_traits<Scalar> {
    static Scalar zero(const Field& f) { return Scalar::zero(f); }
    static Scalar one(const Field& f) { return Scalar::one(f); }
    static Scalar from_integer(const mpz_class& m, const Field& f) { return Scalar::from_integer(m, f); }
    static bool is_zero(const Scalar& s) noexcept { return s.is_zero(); }
};

template <class R>
concept coefficient_ring = requires(const R& a, const R& b, const Field& f, const mpz_class& m) {
    { ring_traits<R>::zero(f) } -> std::convertible_to<R>;
    { ring_traits<R>::one(f) } -> std::convertible_to<R>;
    { ring_traits<R>::from_integer(m, f) } -> std::convertible_to<R>;
    { ring_traits<R>::is_zero(a) } -> std::convertible_to<bool>;
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
};

/// Structure map From -> To for an algebra To over From. The identity map is
/// provided here; the other embeddings live next to their target types.
template <class To, class From>
struct embed;

template <class T>
struct embed<T, T> {
    static T apply(const T& v, const Field&) { return v; }
};

} // namespace polyiter
