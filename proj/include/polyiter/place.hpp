#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "field.hpp"
#include "order.hpp"
#include "scalar.hpp"

namespace polyiter {

/// A place of Q: the archimedean absolute value or a p-adic one.
class Place {
public:
    enum class Kind { Archimedean, PAdic };

    static Place archimedean() noexcept { return Place(Kind::Archimedean, 0); }

    static Place padic(std::uint64_t p) {
        if (!is_prime_u64(p)) throw invalid_field("p-adic place needs a prime, got " + std::to_string(p));
        return Place(Kind::PAdic, p);
    }

    /// "inf" or "p:<prime>".
    static Place parse(std::string_view text) {
        if (text == "inf") return archimedean();
        if (text.substr(0, 2) == "p:") {
            std::string_view digits = text.substr(2);
            std::uint64_t p = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
            if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
                throw parse_error("bad place '" + std::string(text) + "'");
            return padic(p);
        }
        throw parse_error("bad place '" + std::string(text) + "'");
    }

    Kind kind() const noexcept { return kind_; }
    bool is_archimedean() const noexcept { return kind_ == Kind::Archimedean; }
    std::uint64_t prime() const noexcept { return p_; }

    std::string to_string() const { return is_archimedean() ? "inf" : "p:" + std::to_string(p_); }

    friend bool operator==(const Place&, const Place&) = default;

private:
    Place(Kind k, std::uint64_t p) noexcept : kind_(k), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

/// Multiplicity of p in a nonzero integer.
inline std::int64_t multiplicity(const mpz_class& n, std::uint64_t p) {
    if (n == 0) throw error("multiplicity of zero");
    mpz_class prime(static_cast<unsigned long>(p)), rest;
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

/// p-adic valuation v_p(a); +infinity for a = 0.
inline Order padic_valuation(const mpq_class& a, std::uint64_t p) {
    if (sgn(a) == 0) return Order::infinity();
    return Order(multiplicity(a.get_num(), p) - multiplicity(a.get_den(), p));
}

/// |a|_v as an exact rational. Both kinds of absolute value of a rational
/// are rational, so no rounding happens here.
inline mpq_class absolute_value(const mpq_class& a, const Place& v) {
    if (v.is_archimedean()) return abs(a);
    Order val = padic_valuation(a, v.prime());
    if (val.is_infinite()) return mpq_class(0);
    mpz_class power;
    std::int64_t e = val.value();
    mpz_ui_pow_ui(power.get_mpz_t(), v.prime(), static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(mpz_class(1), power) : mpq_class(power);
}

inline mpq_class absolute_value(const Scalar& a, const Place& v) { return absolute_value(a.as_rational(), v); }

} // namespace polyiter
