#include <gtest/gtest.h>

#include "support.hpp"

using namespace polyiter;
using polyiter::testing::fpoly;
using polyiter::testing::Gen;
using polyiter::testing::q;
using polyiter::testing::qpoly;

TEST(Poly, NormalizesAndZeroHasMinusInfinityDegree) {
    const ScalarPoly z = qpoly({0, 0, 0});
    EXPECT_TRUE(z.is_zero());
    EXPECT_TRUE(z.degree().is_minus_infinity());
    EXPECT_LT(z.degree(), Degree(0));
    EXPECT_THROW(z.degree().value(), error);
    EXPECT_EQ(qpoly({1, 2, 0}).degree(), 1);
    EXPECT_TRUE((qpoly({1, 2}) - qpoly({1, 2})).is_zero());
}

TEST(Poly, Compose) {
    EXPECT_EQ(compose(qpoly({0, 0, 1}), qpoly({1, 1})), qpoly({1, 2, 1}));
    EXPECT_EQ(compose(qpoly({1, 1}), qpoly({0, 0, 1})), qpoly({1, 0, 1}));
}

TEST(Poly, ComposeOverF2) {
    // Oracle: over Z, f(f(t)) for f = t^2 + t at t = 0..4 pins the degree-4
    // integer polynomial t^4 + 2t^3 + 2t^2 + t; reducing mod 2 gives x^4 + x.
    const ScalarPoly integer_candidate = qpoly({0, 1, 2, 2, 1});
    for (long t = 0; t <= 4; ++t) {
        const long inner = t * t + t;
        const long direct = inner * inner + inner;
        ASSERT_EQ(integer_candidate.evaluate(q(t)), q(direct));
    }
    const Field f2 = Field::prime(2);
    const ScalarPoly f = fpoly(f2, {0, 1, 1});
    EXPECT_EQ(compose(f, f), fpoly(f2, {0, 1, 2, 2, 1}));
    EXPECT_EQ(compose(f, f), fpoly(f2, {0, 1, 0, 0, 1}));
}

TEST(Poly, Iterate) {
    EXPECT_EQ(iterate(qpoly({0, 0, 1}), 3), ScalarPoly::monomial(Field::rationals(), q(1), 8));
    EXPECT_EQ(iterate(qpoly({1, 1}), 5), qpoly({5, 1}));
    EXPECT_EQ(iterate(qpoly({7}), 4), qpoly({7}));
    EXPECT_EQ(iterate(qpoly({3, 2, 1}), 0), qpoly({0, 1}));
}

TEST(Poly, HasseDerivative) {
    EXPECT_EQ(hasse_derivative(qpoly({0, 0, 0, 1}), 2), qpoly({0, 3}));
    const Field f2 = Field::prime(2);
    const ScalarPoly x2 = fpoly(f2, {0, 0, 1});
    EXPECT_EQ(hasse_derivative(x2, 2), fpoly(f2, {1}));
    EXPECT_TRUE(derivative(derivative(x2)).is_zero());
    EXPECT_TRUE(hasse_derivative(fpoly(f2, {0, 0, 1, 0, 1}), 1).is_zero());
    EXPECT_TRUE(hasse_derivative(qpoly({1, 2}), 5).is_zero());
    EXPECT_EQ(hasse_derivative(qpoly({4, 5, 6}), 0), qpoly({4, 5, 6}));
}

TEST(Poly, Evaluate) {
    EXPECT_EQ(qpoly({-1, 0, 1}).evaluate(q(3)), q(8));
    EXPECT_EQ(ScalarPoly(Field::rationals()).evaluate(q(17, 3)), q(0));
    // L = 1 - x^2 for r = 2, n = 2, a_1 = 1: L(a_1) = a_2 = 0.
    EXPECT_EQ(qpoly({1, 0, -1}).evaluate(q(1)), q(0));
}

TEST(Poly, ParseLiteral) {
    const Field Q = Field::rationals();
    EXPECT_EQ(parse_poly("0,1", Q), qpoly({0, 1}));
    EXPECT_EQ(parse_poly("1/2, -3, 0", Q), ScalarPoly(Q, {q(1, 2), q(-3)}));
    EXPECT_TRUE(parse_poly("", Q).is_zero());
    EXPECT_TRUE(parse_poly("0", Q).is_zero());
    EXPECT_THROW(parse_poly("1,,2", Q), parse_error);
}

namespace {

const std::vector<Field>& test_fields() {
    static const std::vector<Field> fields = {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(7)};
    return fields;
}

} // namespace

TEST(PolyProperties, CompositionIsAssociative) {
    Gen g(101);
    for (const auto& f : test_fields()) {
        for (int i = 0; i < 25; ++i) {
            const ScalarPoly a = g.poly(f, 3), b = g.poly(f, 3), c = g.poly(f, 2);
            ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
        }
    }
}

TEST(PolyProperties, DegreeOfComposition) {
    Gen g(102);
    for (const auto& f : test_fields()) {
        for (int i = 0; i < 40; ++i) {
            const auto da = static_cast<std::size_t>(g.integer(1, 4));
            const auto db = static_cast<std::size_t>(g.integer(1, 4));
            const ScalarPoly a = g.poly_exact(f, da), b = g.poly_exact(f, db);
            ASSERT_EQ(compose(a, b).degree(), static_cast<std::int64_t>(da * db));
        }
    }
}

TEST(PolyProperties, TaylorFormula) {
    // P(a + b) = sum_j P^[j](a) b^j in (k[a])[b].
    using APoly = ScalarPoly;
    using ABPoly = Poly<APoly>;
    Gen g(103);
    for (const auto& f : test_fields()) {
        const APoly a = APoly::identity(f);
        const ABPoly a_plus_b(f, {a, APoly::constant(f, Scalar::one(f))});
        for (int i = 0; i < 50; ++i) {
            const ScalarPoly p = g.poly(f, static_cast<std::size_t>(g.integer(0, 6)));
            const ABPoly lhs = p.evaluate<ABPoly>(a_plus_b);
            std::vector<APoly> rhs_coeffs;
            for (std::size_t j = 0; j < p.size(); ++j) rhs_coeffs.push_back(hasse_derivative(p, j).evaluate<APoly>(a));
            ASSERT_EQ(lhs, ABPoly(f, rhs_coeffs)) << p;
        }
    }
}

TEST(PolyProperties, LeibnizRule) {
    Gen g(104);
    for (const auto& f : test_fields()) {
        for (int i = 0; i < 50; ++i) {
            const ScalarPoly p = g.poly(f, 5), r = g.poly(f, 4);
            const ScalarPoly pr = p * r;
            const std::size_t top = pr.is_zero() ? 0 : static_cast<std::size_t>(pr.degree().value());
            for (std::size_t j = 0; j <= top; ++j) {
                ScalarPoly sum(f);
                for (std::size_t l = 0; l <= j; ++l) sum += hasse_derivative(p, l) * hasse_derivative(r, j - l);
                ASSERT_EQ(hasse_derivative(pr, j), sum);
            }
        }
    }
}

TEST(PolyProperties, HasseScaling) {
    // (T(a x))^[j] = a^j T^[j](a x).
    Gen g(105);
    for (const auto& f : test_fields()) {
        for (int i = 0; i < 50; ++i) {
            const ScalarPoly t = g.poly(f, 6);
            const Scalar a = g.scalar(f);
            for (std::size_t j = 0; j <= 7; ++j) {
                const ScalarPoly lhs = hasse_derivative(scale_argument(t, a), j);
                const ScalarPoly rhs = a.pow(j) * scale_argument(hasse_derivative(t, j), a);
                ASSERT_EQ(lhs, rhs);
            }
        }
    }
}

TEST(PolyProperties, FactorialTimesHasseIsClassicalInCharZero) {
    Gen g(106);
    const Field Q = Field::rationals();
    for (int i = 0; i < 50; ++i) {
        const ScalarPoly p = g.poly(Q, 7);
        ScalarPoly classical = p;
        mpz_class fact(1);
        for (std::size_t j = 0; j <= 8; ++j) {
            if (j > 0) {
                classical = derivative(classical);
                fact *= static_cast<unsigned long>(j);
            }
            ASSERT_EQ(Scalar(mpq_class(fact)) * hasse_derivative(p, j), classical);
        }
    }
}
