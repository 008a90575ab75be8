#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "order.hpp"
#include "ring.hpp"
#include "scalar.hpp"

namespace polyiter {

/// Finite sum of terms c * eps^e with e in Z: an element of k[eps, eps^-1].
/// Terms are kept sorted by exponent with no zero coefficients.
class LaurentScalar {
public:
    using Term = std::pair<std::int64_t, Scalar>;

    LaurentScalar() = default;

    explicit LaurentScalar(const Scalar& c) {
        if (!c.is_zero()) terms_.emplace_back(0, c);
    }

    static LaurentScalar monomial(const Scalar& c, std::int64_t e) {
        LaurentScalar out;
        if (!c.is_zero()) out.terms_.emplace_back(e, c);
        return out;
    }

    /// Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
    static LaurentScalar from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        LaurentScalar out;
        for (auto& [e, c] : terms) {
            if (!out.terms_.empty() && out.terms_.back().first == e)
                out.terms_.back().second += c;
            else
                out.terms_.emplace_back(e, std::move(c));
            if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
        }
        out.drop_zeros();
        return out;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Least exponent carrying a nonzero coefficient; +inf for zero.
    Order min_exponent() const noexcept { return terms_.empty() ? Order::infinity() : Order(terms_.front().first); }

    std::optional<std::int64_t> max_exponent() const noexcept {
        if (terms_.empty()) return std::nullopt;
        return terms_.back().first;
    }

    /// Coefficient of eps^e, or nullopt when it is zero.
    std::optional<Scalar> coeff(std::int64_t e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, std::int64_t x) { return t.first < x; });
        if (it == terms_.end() || it->first != e) return std::nullopt;
        return it->second;
    }

    /// Multiply by eps^k.
    LaurentScalar shifted(std::int64_t k) const {
        LaurentScalar out = *this;
        for (auto& t : out.terms_) t.first = detail::checked_add(t.first, k);
        return out;
    }

    /// Drop every term with exponent >= cap.
    LaurentScalar truncated(Order cap) const {
        if (cap.is_infinite()) return *this;
        LaurentScalar out;
        for (const auto& t : terms_) {
            if (t.first >= cap.value()) break;
            out.terms_.push_back(t);
        }
        return out;
    }

    /// Terms with exponent < cap only (cap optional: full product).
    static LaurentScalar multiply(const LaurentScalar& a, const LaurentScalar& b, Order cap = Order::infinity()) {
        LaurentScalar out;
        if (a.is_zero() || b.is_zero()) return out;
        const std::int64_t lo = detail::checked_add(a.terms_.front().first, b.terms_.front().first);
        std::int64_t hi = detail::checked_add(a.terms_.back().first, b.terms_.back().first);
        if (cap.is_finite()) hi = std::min(hi, cap.value() - 1);
        if (hi < lo) return out;
        const auto width = static_cast<std::size_t>(hi - lo + 1);
        const Scalar zero = a.terms_.front().second.zero_like();
        std::vector<Scalar> dense(width, zero);
        std::vector<bool> touched(width, false);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const std::int64_t e = ea + eb;
                if (e > hi) break;
                const auto idx = static_cast<std::size_t>(e - lo);
                dense[idx] += ca * cb;
                touched[idx] = true;
            }
        }
        for (std::size_t i = 0; i < width; ++i) {
            if (touched[i] && !dense[i].is_zero())
                out.terms_.emplace_back(lo + static_cast<std::int64_t>(i), std::move(dense[i]));
        }
        return out;
    }

    LaurentScalar operator-() const {
        LaurentScalar out = *this;
        for (auto& t : out.terms_) t.second = -t.second;
        return out;
    }

    friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) { return merge(a, b, false); }
    friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return merge(a, b, true); }
    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) { return multiply(a, b); }

    LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
    LaurentScalar& operator-=(const LaurentScalar& o) { return *this = *this - o; }
    LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
        return true;
    }

    /// Substitute eps = e. Needs e != 0 when a negative exponent is present.
    Scalar specialize(const Scalar& e) const {
        Scalar acc = e.zero_like();
        if (terms_.empty()) return acc;
        if (e.is_zero()) {
            if (terms_.front().first < 0) throw zero_specialization();
            auto c = coeff(0);
            return c ? *c : acc;
        }
        const Scalar inv = terms_.front().first < 0 ? e.invert() : e;
        for (const auto& [k, c] : terms_) {
            const Scalar& base = k < 0 ? inv : e;
            acc += c * base.pow(static_cast<std::uint64_t>(k < 0 ? -k : k));
        }
        return acc;
    }

    /// "c*e^k" terms in ascending k joined by " + "; "0" for zero.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) os << " + ";
            os << terms_[i].second << "*e^" << terms_[i].first;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentScalar& l) { return os << l.to_string(); }

private:
    void drop_zeros() {
        std::erase_if(terms_, [](const Term& t) { return t.second.is_zero(); });
    }

    static LaurentScalar merge(const LaurentScalar& a, const LaurentScalar& b, bool subtract) {
        LaurentScalar out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                out.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
                ++j;
            } else {
                Scalar c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::vector<Term> terms_;
};

template <>
struct ring_traits<LaurentScalar> {
    static LaurentScalar zero(const Field&) { return {}; }
    static LaurentScalar one(const Field& f) { return LaurentScalar(Scalar::one(f)); }
    static LaurentScalar from_integer(const mpz_class& m, const Field& f) {
        return LaurentScalar(Scalar::from_integer(m, f));
    }
    static bool is_zero(const LaurentScalar& l) noexcept { return l.is_zero(); }
};

template <>
struct embed<LaurentScalar, Scalar> {
    static LaurentScalar apply(const Scalar& s, const Field&) { return LaurentScalar(s); }
};

} // namespace polyiter
