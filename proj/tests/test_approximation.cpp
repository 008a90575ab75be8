#include <gtest/gtest.h>

#include <chrono>

#include "support.hpp"

using namespace polyiter;
using polyiter::testing::Gen;
using polyiter::testing::q;
using polyiter::testing::qpoly;

namespace {

const Field kQ = Field::rationals();
const Place kInf = Place::archimedean();

mpq_class pow_q(mpq_class base, unsigned e) {
    mpq_class out(1);
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace

TEST(SupNorm, Examples) {
    const ScalarPoly p(kQ, {q(1, 2), q(3), q(-5, 9)});
    EXPECT_EQ(sup_norm(p, kInf), mpq_class(3));
    EXPECT_EQ(sup_norm(p, Place::padic(2)), mpq_class(2));
    EXPECT_EQ(sup_norm(p, Place::padic(3)), mpq_class(9));
    EXPECT_EQ(sup_norm(p, Place::padic(5)), mpq_class(1));
    EXPECT_EQ(sup_norm(ScalarPoly(kQ), kInf), mpq_class(0));
}

TEST(ErrorPolynomial, MatchesPointwiseEvaluation) {
    // P_e = -e^7 x^3 + (e^3 - e^4 + e^5) x^2 - e x + e^-4, evaluated directly at integers.
    const mpq_class e(1, 10);
    auto P = [&](const mpq_class& x) {
        return mpq_class(-pow_q(e, 7) * x * x * x + (pow_q(e, 3) - pow_q(e, 4) + pow_q(e, 5)) * x * x - e * x +
                         1 / pow_q(e, 4));
    };
    const ScalarPoly err = error_polynomial(qpoly({0, 1}), 2, Scalar(e));
    EXPECT_EQ(err.degree(), 9);
    for (long x = -5; x <= 5; ++x) {
        const mpq_class xv(x);
        ASSERT_EQ(err.evaluate(q(x)).as_rational(), xv - P(P(xv))) << "x=" << x;
    }
    EXPECT_THROW(error_polynomial(qpoly({0, 1}), 2, q(0)), zero_specialization);
}

TEST(Convergence, ArchimedeanRatiosStabilise) {
    const auto start = std::chrono::steady_clock::now();
    const auto rows = convergence_table(qpoly({0, 1}), 2, kInf, {q(1, 1000), q(1, 10000), q(1, 100000)});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& row : rows) EXPECT_EQ(row.ratio, row.error_norm / abs(row.epsilon.as_rational()));
    const mpq_class rel = abs(rows[1].ratio - rows[2].ratio) / rows[2].ratio;
    EXPECT_LT(rel, mpq_class(1, 10));
    EXPECT_GT(rows[0].error_norm, rows[1].error_norm);
    EXPECT_GT(rows[1].error_norm, rows[2].error_norm);
    EXPECT_LT(secs, 1.0);
}

TEST(Convergence, PadicNormsShrinkWithPowersOfP) {
    std::vector<Scalar> eps;
    for (unsigned m = 1; m <= 6; ++m) eps.push_back(Scalar(pow_q(3, m)));
    const auto rows = convergence_table(qpoly({0, 1}), 2, Place::padic(3), eps);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(absolute_value(rows[i].epsilon, Place::padic(3)), 1 / pow_q(3, static_cast<unsigned>(i + 1)));
        EXPECT_LE(rows[i].ratio, mpq_class(1));
        if (i > 0) {
            EXPECT_LT(rows[i].error_norm, rows[i - 1].error_norm);
        }
    }
}

TEST(Convergence, ResidualBoundsTheError) {
    // Q - P_e^or = -e T(e, x): |error|_inf <= |e| sum|T| and |error|_p <= |e|_p max|T|_p when |e|_v <= 1.
    Gen g(51);
    for (int i = 0; i < 8; ++i) {
        ConstructionData d = build_P(g.poly(kQ, 1), 2);
        const VerificationReport rep = verify_key_congruence(d, {.mode = IterateMode::Exact});
        ASSERT_TRUE(rep.passed);
        ASSERT_TRUE(rep.residual.has_value());
        const EpsilonPoly& T = *rep.residual;
        for (const auto& e : {q(1, 7), q(-2, 9), q(3, 10)}) {
            mpq_class arch(0);
            for (const auto& c : T.coeffs()) {
                mpq_class s(0);
                for (const auto& t : c.terms()) s += abs(t.second.as_rational());
                if (s > arch) arch = s;
            }
            EXPECT_LE(sup_norm(error_polynomial(d, e), kInf), absolute_value(e, kInf) * arch);
        }
        for (std::uint64_t p : {3u, 5u}) {
            const Place v = Place::padic(p);
            mpq_class bound(0);
            for (const auto& c : T.coeffs())
                for (const auto& t : c.terms()) bound = std::max(bound, absolute_value(t.second, v));
            const Scalar e(mpq_class(static_cast<long>(p * p)));
            EXPECT_LE(sup_norm(error_polynomial(d, e), v), absolute_value(e, v) * bound);
        }
    }
}

TEST(MultiPlace, SimultaneousApproximation) {
    const auto start = std::chrono::steady_clock::now();
    const ApproximationTarget target{qpoly({1, 0, 1}), 2, {kInf, Place::padic(3), Place::padic(5)}, mpq_class(1, 100)};
    const MultiPlaceResult res = find_epsilon_multi_place(target);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 10.0);
    EXPECT_EQ(res.auxiliary_prime, 2u);
    EXPECT_LE(res.deg_P, res.degree_bound);
    EXPECT_EQ(res.degree_bound, 4);
    // Re-verify from scratch with a fresh construction and the plain iterate.
    const ConstructionData d = build_P(target.Q, target.r);
    const ScalarPoly pe = specialize_epsilon(d.P, res.epsilon);
    const ScalarPoly err = compose(pe, pe) - target.Q;
    ASSERT_EQ(res.norms.size(), 3u);
    for (const auto& [place, norm] : res.norms) {
        EXPECT_EQ(sup_norm(err, place), norm);
        EXPECT_LT(norm, target.eta) << place.to_string();
    }
}

TEST(MultiPlace, SingleArchimedeanPlace) {
    const ApproximationTarget target{qpoly({0, 1}), 3, {kInf}, mpq_class(1, 1000)};
    const MultiPlaceResult res = find_epsilon_multi_place(target);
    EXPECT_EQ(res.m, 0u);
    EXPECT_LT(sup_norm(error_polynomial(build_P(target.Q, 3), res.epsilon), kInf), target.eta);
}

TEST(MultiPlace, RejectsBadInput) {
    EXPECT_THROW(find_epsilon_multi_place({qpoly({0, 1}), 2, {kInf}, mpq_class(0)}), error);
    EXPECT_THROW(find_epsilon_multi_place({qpoly({0, 1}), 2, {kInf, kInf}, mpq_class(1, 2)}), error);
    EXPECT_THROW(find_epsilon_multi_place({qpoly({0, 1}), 2, {}, mpq_class(1, 2)}), error);
    const ScalarPoly f5(Field::prime(5), {Scalar::zero(Field::prime(5)), Scalar::one(Field::prime(5))});
    EXPECT_THROW(find_epsilon_multi_place({f5, 2, {kInf}, mpq_class(1, 2)}), field_mismatch);
    EXPECT_THROW(find_epsilon_multi_place({qpoly({0, 1}), 2, {kInf}, mpq_class(1, 2)}, {.max_m_prime = 0}),
                 iteration_cap);
}
