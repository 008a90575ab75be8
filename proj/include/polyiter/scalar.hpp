#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "field.hpp"

namespace polyiter {

/// Canonical residue of F_p, 0 <= value < modulus.
struct Residue {
    std::uint64_t value = 0;
    std::uint64_t modulus = 2;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Element of Q (reduced mpq, positive denominator) or of a prime field.
/// Arithmetic never coerces between the two; mixing them throws field_mismatch.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    explicit Scalar(Residue r) : v_(r) {}

    static Scalar zero(const Field& f) { return from_integer(0, f); }
    static Scalar one(const Field& f) { return from_integer(1, f); }

    static Scalar from_integer(const mpz_class& m, const Field& f) {
        if (f.is_rational()) return Scalar(mpq_class(m));
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), m.get_mpz_t(), f.modulus());
        return Scalar(Residue{r.get_ui(), f.modulus()});
    }

    static Scalar from_integer(long m, const Field& f) { return from_integer(mpz_class(m), f); }

    /// Rational literal "a", "+a", "-a", "a/b"; over F_p the value a/b is reduced mod p.
    static Scalar parse(std::string_view text, const Field& f) {
        std::string s(text);
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        if (!s.empty() && s.front() == '+') s.erase(s.begin());
        auto slash = s.find('/');
        auto valid_int = [](std::string_view t) {
            if (!t.empty() && t.front() == '-') t.remove_prefix(1);
            if (t.empty()) return false;
            for (char c : t)
                if (c < '0' || c > '9') return false;
            return true;
        };
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den.front() == '-')
            throw parse_error("bad scalar literal '" + std::string(text) + "'");
        mpz_class n(num), d(den);
        if (d == 0) throw division_by_zero();
        if (f.is_rational()) return Scalar(mpq_class(n, d));
        return from_integer(n, f) / from_integer(d, f);
    }

    Field field() const {
        if (is_rational()) return Field::rationals();
        return Field::trusted_prime(std::get<Residue>(v_).modulus);
    }

    bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(v_); }

    const mpq_class& as_rational() const {
        if (!is_rational()) throw field_mismatch("scalar is not rational");
        return std::get<mpq_class>(v_);
    }

    const Residue& as_residue() const {
        if (is_rational()) throw field_mismatch("scalar is not a prime-field residue");
        return std::get<Residue>(v_);
    }

    bool is_zero() const noexcept {
        if (is_rational()) return sgn(std::get<mpq_class>(v_)) == 0;
        return std::get<Residue>(v_).value == 0;
    }

    bool is_one() const noexcept {
        if (is_rational()) return std::get<mpq_class>(v_) == 1;
        return std::get<Residue>(v_).value == 1;
    }

    Scalar zero_like() const { return is_rational() ? Scalar() : Scalar(Residue{0, as_residue().modulus}); }
    Scalar one_like() const {
        return is_rational() ? Scalar(mpq_class(1)) : Scalar(Residue{1 % as_residue().modulus, as_residue().modulus});
    }

    Scalar operator-() const {
        if (is_rational()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
        const auto& r = std::get<Residue>(v_);
        return Scalar(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
    }

    Scalar& operator+=(const Scalar& o) {
        if (is_rational()) {
            std::get<mpq_class>(v_) += o.rational_for_op();
        } else {
            auto& r = std::get<Residue>(v_);
            std::uint64_t b = o.residue_for_op(r.modulus);
            r.value = r.value >= r.modulus - b ? r.value - (r.modulus - b) : r.value + b;
        }
        return *this;
    }

    Scalar& operator-=(const Scalar& o) {
        if (is_rational()) {
            std::get<mpq_class>(v_) -= o.rational_for_op();
        } else {
            auto& r = std::get<Residue>(v_);
            std::uint64_t b = o.residue_for_op(r.modulus);
            r.value = r.value >= b ? r.value - b : r.value + (r.modulus - b);
        }
        return *this;
    }

    Scalar& operator*=(const Scalar& o) {
        if (is_rational()) {
            std::get<mpq_class>(v_) *= o.rational_for_op();
        } else {
            auto& r = std::get<Residue>(v_);
            r.value = detail::mulmod(r.value, o.residue_for_op(r.modulus), r.modulus);
        }
        return *this;
    }

    Scalar& operator/=(const Scalar& o) { return *this *= o.invert(); }

    /// Multiplicative inverse; throws division_by_zero on 0.
    Scalar invert() const {
        if (is_zero()) throw division_by_zero();
        if (is_rational()) return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
        const auto& r = std::get<Residue>(v_);
        return Scalar(Residue{detail::powmod(r.value, r.modulus - 2, r.modulus), r.modulus});
    }

    Scalar pow(std::uint64_t e) const {
        Scalar result = one_like();
        Scalar base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_rational() != b.is_rational()) throw field_mismatch("comparing scalars of different fields");
        if (a.is_rational()) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
        const auto& ra = std::get<Residue>(a.v_);
        const auto& rb = std::get<Residue>(b.v_);
        if (ra.modulus != rb.modulus) throw field_mismatch("comparing residues of different prime fields");
        return ra.value == rb.value;
    }

    std::string to_string() const {
        if (is_rational()) return std::get<mpq_class>(v_).get_str();
        return std::to_string(std::get<Residue>(v_).value);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    const mpq_class& rational_for_op() const {
        if (!is_rational()) throw field_mismatch("mixing rational and prime-field scalars");
        return std::get<mpq_class>(v_);
    }

    std::uint64_t residue_for_op(std::uint64_t modulus) const {
        if (is_rational()) throw field_mismatch("mixing rational and prime-field scalars");
        const auto& r = std::get<Residue>(v_);
        if (r.modulus != modulus) throw field_mismatch("mixing residues of different prime fields");
        return r.value;
    }

    std::variant<mpq_class, Residue> v_;
};

/// Exact binomial coefficient C(n, k), zero when k > n.
inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    if (k > n) return out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

} // namespace polyiter
