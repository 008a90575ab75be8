#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace polyiter::census {

using u64 = std::uint64_t;

/// Ascending coefficients mod p, no trailing zeros.
using FpCoeffs = std::vector<u64>;

inline void trim(FpCoeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpCoeffs mul(const FpCoeffs& a, const FpCoeffs& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpCoeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = (out[i + j] + detail::mulmod(a[i], b[j], p)) % p;
        }
    }
    trim(out);
    return out;
}

inline FpCoeffs compose(const FpCoeffs& outer, const FpCoeffs& inner, u64 p) {
    FpCoeffs acc;
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) {
        acc = mul(acc, inner, p);
        if (acc.empty()) acc.push_back(0);
        acc[0] = (acc[0] + *it) % p;
        trim(acc);
    }
    return acc;
}

/// Q^or over F_p.
inline FpCoeffs iterate(const FpCoeffs& q, std::uint64_t r, u64 p) {
    FpCoeffs out{0, 1 % p};
    trim(out);
    for (std::uint64_t i = 0; i < r; ++i) out = compose(q, out, p);
    return out;
}

/// floor(d^(1/r)) by exact integer root extraction.
inline std::uint64_t integer_root(std::uint64_t d, std::uint64_t r) {
    mpz_class out, in(static_cast<unsigned long>(d));
    mpz_root(out.get_mpz_t(), in.get_mpz_t(), static_cast<unsigned long>(r));
    return out.get_ui();
}

struct CensusRow {
    std::uint64_t q = 0, r = 0, d = 0;
    std::uint64_t root_degree = 0;  // floor(d^(1/r))
    std::uint64_t count = 0;
    mpz_class total;  // q^(d+1)
    mpq_class ratio;  // count / total
    mpz_class bound;  // q^(floor(d^(1/r)) + 1)
};

struct CensusResult {
    CensusRow row;
    std::vector<FpCoeffs> iterates;  // canonical order: by degree, then coefficients from the top
};

/// Enumeration cap: $POLYITER_ENUM_LIMIT if set, else 2^24 candidate maps.
inline std::uint64_t default_limit() {
    if (const char* env = std::getenv("POLYITER_ENUM_LIMIT")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ULL << 24;
}

inline bool canonical_less(const FpCoeffs& a, const FpCoeffs& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

/// Maps a census of (q, d, r) runs over: q^(floor(d^(1/r)) + 1).
inline mpz_class candidate_count(std::uint64_t q, std::uint64_t d, std::uint64_t r) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), q, integer_root(d, r) + 1);
    return out;
}

inline void check_request(std::uint64_t q, std::uint64_t d, std::uint64_t r, std::uint64_t limit) {
    if (!is_prime_u64(q)) throw invalid_field("census needs a prime q, got " + std::to_string(q));
    if (d < 1) throw error("census needs d >= 1");
    if (r < 2) throw error("census needs r >= 2");
    const mpz_class n = candidate_count(q, d, r);
    if (n > mpz_class(static_cast<unsigned long>(limit)))
        throw enumeration_limit("census would enumerate " + n.get_str() + " maps, limit is " + std::to_string(limit));
}

/// All r-th iterates of degree <= d over F_q (q prime), by running over every
/// Q with deg Q <= floor(d^(1/r)). Work is split by (deg Q, leading
/// coefficient); partitions deduplicate locally and are merged by union.
inline CensusResult enumerate_iterates(std::uint64_t q, std::uint64_t d, std::uint64_t r,
                                       std::uint64_t limit = default_limit(), unsigned threads = 0) {
    check_request(q, d, r, limit);
    const std::uint64_t D = integer_root(d, r);
    const mpz_class candidates = candidate_count(q, d, r);

    struct Part {
        std::uint64_t degree;
        u64 lead;
    };
    std::vector<Part> parts;
    for (std::uint64_t deg = 0; deg <= D; ++deg)
        for (u64 lead = 1; lead < q; ++lead) parts.push_back({deg, lead});

    auto encode = [](const FpCoeffs& c) {
        std::string s(c.size() * sizeof(u64), '\0');
        if (!c.empty()) std::memcpy(s.data(), c.data(), s.size());
        return s;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(parts.size(), 1)));
    std::vector<std::unordered_set<std::string>> local(threads);
    std::atomic<std::size_t> next{0};
    auto work = [&](unsigned id) {
        auto& seen = local[id];
        for (std::size_t idx = next++; idx < parts.size(); idx = next++) {
            const Part part = parts[idx];
            FpCoeffs qc(part.degree + 1, 0);
            qc[part.degree] = part.lead;
            while (true) {
                FpCoeffs it = iterate(qc, r, q);
                if (it.size() <= d + 1) seen.insert(encode(it));
                std::uint64_t i = 0;
                while (i < part.degree && ++qc[i] == q) qc[i++] = 0;
                if (i == part.degree) break;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
        work(0);
    }

    std::unordered_set<std::string> merged = {encode(iterate(FpCoeffs{}, r, q))};
    for (auto& s : local) merged.merge(s);

    CensusResult res;
    for (const auto& key : merged) {
        FpCoeffs c(key.size() / sizeof(u64));
        if (!c.empty()) std::memcpy(c.data(), key.data(), key.size());
        res.iterates.push_back(std::move(c));
    }
    std::sort(res.iterates.begin(), res.iterates.end(), canonical_less);

    CensusRow& row = res.row;
    row.q = q;
    row.r = r;
    row.d = d;
    row.root_degree = D;
    row.count = res.iterates.size();
    mpz_ui_pow_ui(row.total.get_mpz_t(), q, d + 1);
    row.ratio = mpq_class(mpz_class(static_cast<unsigned long>(row.count)), row.total);
    row.ratio.canonicalize();
    row.bound = candidates;
    return res;
}

inline std::vector<CensusRow> density_report(std::uint64_t q, std::uint64_t r, const std::vector<std::uint64_t>& ds,
                                             std::uint64_t limit = default_limit()) {
    for (auto d : ds) check_request(q, d, r, limit);
    std::vector<CensusRow> rows;
    for (auto d : ds) rows.push_back(enumerate_iterates(q, d, r, limit).row);
    return rows;
}

/// q^(-d-1) |Iterates(d^r, r)| for d = 1..d_max.
inline std::vector<mpq_class> question_sequence(std::uint64_t q, std::uint64_t r, std::uint64_t d_max,
                                                std::uint64_t limit = default_limit()) {
    std::vector<mpq_class> out;
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        mpz_class dr;
        mpz_ui_pow_ui(dr.get_mpz_t(), d, r);
        if (!dr.fits_ulong_p()) throw enumeration_limit("degree bound " + dr.get_str() + " is out of range");
        check_request(q, dr.get_ui(), r, limit);
    }
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        mpz_class dr;
        mpz_ui_pow_ui(dr.get_mpz_t(), d, r);
        const CensusRow row = enumerate_iterates(q, dr.get_ui(), r, limit).row;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), q, d + 1);
        mpq_class v(mpz_class(static_cast<unsigned long>(row.count)), scale);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

} // namespace polyiter::census
