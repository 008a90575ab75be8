#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epsilon.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace polyiter {

/// Distinct nonzero field elements a_1..a_{r-1}; a_r = 0 is implicit.
class Anchors {
public:
    Anchors(Field f, std::vector<Scalar> values) : field_(f), values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i].field() != field_) throw field_mismatch("anchor not in field " + field_.to_string());
            if (values_[i].is_zero()) throw invalid_anchors("anchors must be nonzero");
            for (std::size_t j = 0; j < i; ++j)
                if (values_[i] == values_[j]) throw invalid_anchors("anchors must be pairwise distinct");
        }
    }

    const Field& field() const noexcept { return field_; }

    /// r - 1.
    std::size_t count() const noexcept { return values_.size(); }
    std::size_t r() const noexcept { return values_.size() + 1; }

    const std::vector<Scalar>& values() const noexcept { return values_; }

    /// a_k for 1 <= k <= r, with a_r = 0.
    Scalar at(std::size_t k) const {
        if (k == 0 || k > r()) throw error("anchor index out of range");
        return k == r() ? Scalar::zero(field_) : values_[k - 1];
    }

private:
    Field field_;
    std::vector<Scalar> values_;
};

/// Default anchors 1, ..., r-1. Over F_p these are distinct and nonzero
/// exactly when p >= r, which is also the field-size requirement.
inline Anchors choose_anchors(const Field& f, std::size_t r) {
    if (r < 2) throw error("anchors need r >= 2");
    if (auto q = f.size(); q && *q < r)
        throw field_too_small("field " + f.to_string() + " has fewer than r = " + std::to_string(r) + " elements");
    std::vector<Scalar> v;
    for (std::size_t i = 1; i < r; ++i) v.push_back(Scalar::from_integer(static_cast<long>(i), f));
    return Anchors(f, std::move(v));
}

/// L from the linear system in l_n..l_{n+r-2}:
///   sum_i l_{n+i} a_k^{n+i} = a_{k+1} - a_1   (k = 1..r-1),
/// solved by exact Gaussian elimination.
inline ScalarPoly build_L_linear_system(const Anchors& a, std::size_t n) {
    const Field& f = a.field();
    const std::size_t m = a.count();
    std::vector<std::vector<Scalar>> rows(m, std::vector<Scalar>(m + 1, Scalar::zero(f)));
    for (std::size_t k = 0; k < m; ++k) {
        const Scalar& ak = a.values()[k];
        Scalar power = ak.pow(n);
        for (std::size_t i = 0; i < m; ++i) {
            rows[k][i] = power;
            power *= ak;
        }
        rows[k][m] = a.at(k + 2) - a.at(1);
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == m) throw internal_consistency("singular interpolation system");
        std::swap(rows[pivot], rows[col]);
        const Scalar inv = rows[col][col].invert();
        for (auto& x : rows[col]) x *= inv;
        for (std::size_t row = 0; row < m; ++row) {
            if (row == col || rows[row][col].is_zero()) continue;
            const Scalar factor = rows[row][col];
            for (std::size_t c = col; c <= m; ++c) rows[row][c] -= factor * rows[col][c];
        }
    }
    std::vector<Scalar> coeffs(n + m, Scalar::zero(f));
    coeffs[0] = a.at(1);
    for (std::size_t i = 0; i < m; ++i) coeffs[n + i] = rows[i][m];
    return ScalarPoly(f, std::move(coeffs));
}

/// L(x) = a_1 + sum_k (a_{k+1} - a_1) x^n / a_k^n prod_{l != k} (x - a_l) / (a_k - a_l).
inline ScalarPoly build_L_lagrange(const Anchors& a, std::size_t n) {
    const Field& f = a.field();
    ScalarPoly out = ScalarPoly::constant(f, a.at(1));
    const ScalarPoly xn = ScalarPoly::monomial(f, Scalar::one(f), n);
    for (std::size_t k = 1; k <= a.count(); ++k) {
        const Scalar ak = a.at(k);
        Scalar scale = (a.at(k + 1) - a.at(1)) / ak.pow(n);
        ScalarPoly basis = xn;
        for (std::size_t l = 1; l <= a.count(); ++l) {
            if (l == k) continue;
            basis *= ScalarPoly(f, {-a.at(l), Scalar::one(f)});
            scale /= ak - a.at(l);
        }
        out += scale * basis;
    }
    return out;
}

/// The unique L of degree <= n+r-2 with L(0) = a_1, L(a_k) = a_{k+1} and
/// vanishing Hasse derivatives of orders 1..n-1 at 0. Computed by both
/// routes; disagreement means an arithmetic bug.
inline ScalarPoly build_L(const Anchors& a, std::size_t n) {
    if (n < 2) throw error("build_L needs n >= 2");
    ScalarPoly linear = build_L_linear_system(a, n);
    ScalarPoly lagrange = build_L_lagrange(a, n);
    if (!(linear == lagrange))
        throw internal_consistency("interpolation routes disagree: " + linear.to_string() + " vs " +
                                   lagrange.to_string());
    return linear;
}

/// R(x) = prod_k (a_k - x).
inline ScalarPoly build_R(const Anchors& a) {
    const Field& f = a.field();
    ScalarPoly out = ScalarPoly::constant(f, Scalar::one(f));
    for (const auto& ak : a.values()) out *= ScalarPoly(f, {ak, -Scalar::one(f)});
    return out;
}

/// c = R(0)^(n+1) prod_l R'(a_l).
inline Scalar build_c(const Anchors& a, std::size_t n) {
    const ScalarPoly R = build_R(a);
    const ScalarPoly dR = derivative(R);
    Scalar c = R.evaluate(Scalar::zero(a.field())).pow(n + 1);
    for (const auto& al : a.values()) c *= dR.evaluate(al);
    return c;
}

/// c^-1 R(0) prod_{l<k} R'(a_l) a_l^n, the factor in front of Q along the
/// orbit after k-1 steps. Equals 1 at k = r.
inline Scalar orbit_factor(const Anchors& a, std::size_t n, const Scalar& c, std::size_t k) {
    const ScalarPoly R = build_R(a);
    const ScalarPoly dR = derivative(R);
    Scalar out = c.invert() * R.evaluate(Scalar::zero(a.field()));
    for (std::size_t l = 1; l < k; ++l) out *= dR.evaluate(a.at(l)) * a.at(l).pow(n);
    return out;
}

/// Full witness for one (Q, r): P^or == Q mod eps.
struct ConstructionData {
    Field field = Field::rationals();
    std::size_t r = 1;
    std::size_t n = 2;
    ScalarPoly Q{Field::rationals()};
    std::vector<Scalar> anchors;  // a_1..a_{r-1}
    ScalarPoly L{Field::rationals()};
    ScalarPoly R{Field::rationals()};
    Scalar c;
    EpsilonPoly P{Field::rationals()};
    /// T with P^or = Q + eps T, once an exact iterate has been computed.
    std::optional<EpsilonPoly> residual;

    /// r = 1 is the identity word: P = Q, nothing to construct.
    bool is_identity_word() const noexcept { return r == 1; }

    Anchors anchor_set() const { return Anchors(field, anchors); }

    /// (r-1)(2n-3).
    std::int64_t base_exponent() const {
        return static_cast<std::int64_t>(r - 1) * (2 * static_cast<std::int64_t>(n) - 3);
    }
};

/// The n used for Q: max(2, deg Q + 1).
inline std::size_t default_n(const ScalarPoly& q) {
    if (q.degree().is_minus_infinity()) return 2;
    return std::max<std::size_t>(2, static_cast<std::size_t>(q.degree().value()) + 1);
}

/// eps^((r-1)(2n-3)) R(eps^2r x) (eps^r x^n + c^-1 Q) + eps^-2r L(eps^2r x).
inline EpsilonPoly assemble_P(const ScalarPoly& q, std::size_t r, std::size_t n, const ScalarPoly& L,
                              const ScalarPoly& R, const Scalar& c) {
    const Field& f = q.field();
    const auto two_r = static_cast<std::int64_t>(2 * r);
    const auto base = static_cast<std::int64_t>(r - 1) * (2 * static_cast<std::int64_t>(n) - 3);
    const EpsilonPoly bracket =
        EpsilonPoly::monomial(f, eps_power(f, static_cast<std::int64_t>(r)), n) + lift(c.invert() * q);
    const EpsilonPoly first = shift_epsilon(scale_x_by_eps(lift(R), two_r) * bracket, base);
    const EpsilonPoly second = shift_epsilon(scale_x_by_eps(lift(L), two_r), -two_r);
    return first + second;
}

/// Builds the witness family for Q and r. n defaults to max(2, deg Q + 1);
/// a larger n may be forced. Anchors default to 1..r-1.
inline ConstructionData build_P(const ScalarPoly& q, std::size_t r, std::optional<Anchors> anchors = std::nullopt,
                                std::optional<std::size_t> n_override = std::nullopt) {
    if (r < 1) throw error("r must be >= 1");
    ConstructionData d;
    d.field = q.field();
    d.r = r;
    d.Q = q;
    const std::size_t n_min = default_n(q);
    d.n = n_override.value_or(n_min);
    if (d.n < n_min) throw error("n must be >= max(2, deg Q + 1) = " + std::to_string(n_min));
    d.L = ScalarPoly(d.field);
    d.R = ScalarPoly::constant(d.field, Scalar::one(d.field));
    d.c = Scalar::one(d.field);
    if (r == 1) {
        d.P = lift(q);
        d.residual = EpsilonPoly(d.field);
        return d;
    }
    Anchors a = anchors ? *anchors : choose_anchors(d.field, r);
    if (a.field() != d.field) throw field_mismatch("anchors and Q live in different fields");
    if (a.r() != r)
        throw invalid_anchors("expected " + std::to_string(r - 1) + " anchors, got " + std::to_string(a.count()));
    d.anchors = a.values();
    d.L = build_L(a, d.n);
    d.R = build_R(a);
    d.c = build_c(a, d.n);
    d.P = assemble_P(q, r, d.n, d.L, d.R, d.c);
    return d;
}

/// Total exponent m_1 + ... + m_s of a free-monoid word.
struct Letter {
    std::size_t generator = 1;
    std::uint64_t exponent = 1;
};

inline std::uint64_t word_total_exponent(const std::vector<Letter>& word) {
    if (word.empty()) throw empty_word();
    std::uint64_t total = 0;
    for (const auto& l : word) {
        if (l.exponent == 0) throw error("word exponents must be positive");
        if (__builtin_add_overflow(total, l.exponent, &total)) throw error("word exponent overflow");
    }
    return total;
}

/// Parses words such as "x1^2 x2^3", "x1", "x2x2x2".
inline std::vector<Letter> parse_word(std::string_view text) {
    std::vector<Letter> out;
    std::size_t i = 0;
    auto read_number = [&](std::uint64_t& value) {
        const std::size_t start = i;
        value = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            if (__builtin_mul_overflow(value, 10ULL, &value) ||
                __builtin_add_overflow(value, static_cast<std::uint64_t>(text[i] - '0'), &value))
                throw parse_error("number too large in word");
            ++i;
        }
        return i > start;
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ' ' || ch == '\t' || ch == '*') {
            ++i;
            continue;
        }
        if (ch != 'x') throw parse_error("bad word '" + std::string(text) + "': expected 'x<index>'");
        ++i;
        Letter l;
        std::uint64_t idx = 0;
        if (!read_number(idx) || idx == 0) throw parse_error("bad generator index in word '" + std::string(text) + "'");
        l.generator = static_cast<std::size_t>(idx);
        if (i < text.size() && text[i] == '^') {
            ++i;
            if (!read_number(l.exponent)) throw parse_error("bad exponent in word '" + std::string(text) + "'");
            if (l.exponent == 0) throw parse_error("word exponents must be positive (monoid word)");
        }
        out.push_back(l);
    }
    if (out.empty()) throw empty_word();
    return out;
}

} // namespace polyiter
