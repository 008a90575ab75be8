#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace polyiter {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace detail

/// Deterministic Miller-Rabin; the witness set below is exact for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) noexcept {
    using detail::u64;
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Descriptor of an exact coefficient field: the rationals or a prime field.
class Field {
public:
    enum class Kind { Rational, Prime };

    static Field rationals() noexcept { return Field(Kind::Rational, 0); }

    static Field prime(std::uint64_t p) {
        if (!is_prime_u64(p)) throw invalid_field("modulus " + std::to_string(p) + " is not prime");
        return Field(Kind::Prime, p);
    }

    /// For moduli already known to be prime (e.g. read back from a residue).
    static Field trusted_prime(std::uint64_t p) noexcept { return Field(Kind::Prime, p); }

    /// Accepts "Q" and "Fp:<p>".
    static Field parse(std::string_view text) {
        if (text == "Q") return rationals();
        constexpr std::string_view prefix = "Fp:";
        if (text.substr(0, prefix.size()) == prefix) {
            std::string_view digits = text.substr(prefix.size());
            std::uint64_t p = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
            if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
                throw invalid_field("bad prime modulus in field descriptor '" + std::string(text) + "'");
            return prime(p);
        }
        throw invalid_field("unknown field descriptor '" + std::string(text) + "'");
    }

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rational; }
    bool is_prime() const noexcept { return kind_ == Kind::Prime; }
    std::uint64_t modulus() const noexcept { return p_; }

    /// Number of elements, or nullopt for an infinite field.
    std::optional<std::uint64_t> size() const noexcept {
        if (is_rational()) return std::nullopt;
        return p_;
    }

    std::string to_string() const { return is_rational() ? "Q" : "Fp:" + std::to_string(p_); }

    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(Kind k, std::uint64_t p) noexcept : kind_(k), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

} // namespace polyiter
