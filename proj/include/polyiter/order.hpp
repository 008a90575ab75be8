#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace polyiter {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw exponent_overflow();
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw exponent_overflow();
    return out;
}

} // namespace detail

/// An integer or +infinity. Used for epsilon-orders (the order of zero is
/// +infinity) and for absolute precisions (an exact value has infinite
/// precision).
class Order {
public:
    constexpr Order() noexcept : v_(kInf) {}
    constexpr Order(std::int64_t v) noexcept : v_(v) {}  // NOLINT: implicit by intent

    static constexpr Order infinity() noexcept { return Order(); }

    constexpr bool is_infinite() const noexcept { return v_ == kInf; }
    constexpr bool is_finite() const noexcept { return v_ != kInf; }

    std::int64_t value() const {
        if (is_infinite()) throw error("Order::value() on +infinity");
        return v_;
    }

    constexpr auto operator<=>(const Order&) const noexcept = default;

    friend Order operator+(Order a, Order b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Order(detail::checked_add(a.v_, b.v_));
    }

    friend Order min(Order a, Order b) noexcept { return a < b ? a : b; }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(v_); }

    friend std::ostream& operator<<(std::ostream& os, const Order& o) {
        return os << o.to_string();
    }

private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::int64_t v_;
};

/// Degree of a polynomial; the zero polynomial has degree -infinity, which
/// compares below every finite degree.
class Degree {
public:
    constexpr Degree() noexcept : v_(kNegInf) {}
    constexpr explicit Degree(std::int64_t v) noexcept : v_(v) {}

    static constexpr Degree minus_infinity() noexcept { return Degree(); }

    constexpr bool is_minus_infinity() const noexcept { return v_ == kNegInf; }

    std::int64_t value() const {
        if (is_minus_infinity()) throw error("degree of the zero polynomial");
        return v_;
    }

    constexpr auto operator<=>(const Degree&) const noexcept = default;

    friend constexpr bool operator==(Degree a, std::int64_t b) noexcept { return a.v_ == b && b != kNegInf; }
    friend constexpr auto operator<=>(Degree a, std::int64_t b) noexcept { return a <=> Degree(b); }

    std::string to_string() const { return is_minus_infinity() ? "-inf" : std::to_string(v_); }

    friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
        return os << d.to_string();
    }

private:
    static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
    std::int64_t v_;
};

} // namespace polyiter
