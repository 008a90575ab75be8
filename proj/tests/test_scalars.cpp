#include <gtest/gtest.h>

#include "support.hpp"

using namespace polyiter;
using polyiter::testing::Gen;
using polyiter::testing::q;

TEST(Field, ParsesDescriptors) {
    EXPECT_TRUE(Field::parse("Q").is_rational());
    EXPECT_EQ(Field::parse("Fp:7").modulus(), 7u);
    EXPECT_EQ(Field::parse("Fp:7").to_string(), "Fp:7");
    EXPECT_THROW(Field::parse("Fp:8"), invalid_field);
    EXPECT_THROW(Field::parse("Fp:1"), invalid_field);
    EXPECT_THROW(Field::parse("Fp:"), invalid_field);
    EXPECT_THROW(Field::parse("Fp:99999999999999999999999"), invalid_field);
    EXPECT_THROW(Field::parse("R"), invalid_field);
}

TEST(Field, PrimalityMatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 5000; ++n) {
        bool trial = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
        ASSERT_EQ(is_prime_u64(n), trial) << n;
    }
    EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
    EXPECT_FALSE(is_prime_u64(3215031751ULL));           // strong pseudoprime to bases 2,3,5,7
}

TEST(Scalar, FromInteger) {
    EXPECT_TRUE(Scalar::from_integer(6, Field::prime(2)).is_zero());
    EXPECT_EQ(Scalar::from_integer(-1, Field::prime(7)).as_residue().value, 6u);
    EXPECT_EQ(Scalar::from_integer(3, Field::rationals()).to_string(), "3");
    EXPECT_EQ(Scalar::from_integer(3, Field::rationals()).as_rational().get_den(), 1);
}

TEST(Scalar, Invert) {
    EXPECT_EQ(q(2, 3).invert(), q(3, 2));
    EXPECT_EQ(Scalar::from_integer(3, Field::prime(7)).invert().as_residue().value, 5u);
    EXPECT_THROW(q(0).invert(), division_by_zero);
    EXPECT_THROW(Scalar::zero(Field::prime(5)).invert(), division_by_zero);
}

TEST(Scalar, RationalsStayReduced) {
    const Scalar s(mpq_class(6, -4));
    EXPECT_EQ(s.to_string(), "-3/2");
    EXPECT_EQ(s.as_rational().get_den(), 2);
    EXPECT_EQ((q(1, 6) + q(1, 3)).to_string(), "1/2");
    EXPECT_EQ((q(1, 2) - q(1, 2)).to_string(), "0");
}

TEST(Scalar, ParseLiterals) {
    const Field Q = Field::rationals();
    EXPECT_EQ(Scalar::parse("-3/4", Q), q(-3, 4));
    EXPECT_EQ(Scalar::parse("+5", Q), q(5));
    EXPECT_EQ(Scalar::parse(" 6/8 ", Q).to_string(), "3/4");
    EXPECT_EQ(Scalar::parse("1/2", Field::prime(7)).as_residue().value, 4u);
    EXPECT_THROW(Scalar::parse("1/0", Q), division_by_zero);
    EXPECT_THROW(Scalar::parse("1/7", Field::prime(7)), division_by_zero);
    EXPECT_THROW(Scalar::parse("abc", Q), parse_error);
    EXPECT_THROW(Scalar::parse("1/-2", Q), parse_error);
    EXPECT_THROW(Scalar::parse("", Q), parse_error);
}

TEST(Scalar, MixingFieldsIsAnError) {
    const Scalar a = q(1);
    const Scalar b = Scalar::one(Field::prime(5));
    const Scalar c = Scalar::one(Field::prime(7));
    EXPECT_THROW(a + b, field_mismatch);
    EXPECT_THROW(b * a, field_mismatch);
    EXPECT_THROW(b - c, field_mismatch);
    EXPECT_THROW((void)(b == c), field_mismatch);
}

TEST(Scalar, FieldAxiomsOnRandomSamples) {
    Gen g(11);
    for (const Field f : {Field::rationals(), Field::prime(2), Field::prime(7), Field::prime(1000003)}) {
        for (int i = 0; i < 300; ++i) {
            const Scalar a = g.scalar(f), b = g.scalar(f), c = g.scalar(f);
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_TRUE((a + (-a)).is_zero());
            if (!a.is_zero()) {
                ASSERT_TRUE((a * a.invert()).is_one());
            }
        }
    }
}

TEST(Scalar, LargePrimeArithmetic) {
    const Field f = Field::prime(18446744073709551557ULL);
    const Scalar a = Scalar::from_integer(-2, f);
    EXPECT_EQ(a.as_residue().value, 18446744073709551555ULL);
    EXPECT_TRUE((a * a.invert()).is_one());
    EXPECT_EQ(a + Scalar::from_integer(2, f), Scalar::zero(f));
}

TEST(Place, AbsoluteValues) {
    EXPECT_EQ(absolute_value(q(-3, 4), Place::archimedean()), mpq_class(3, 4));
    EXPECT_DOUBLE_EQ(absolute_value(q(-3, 4), Place::archimedean()).get_d(), 0.75);
    EXPECT_EQ(absolute_value(q(12), Place::padic(2)), mpq_class(1, 4));
    EXPECT_EQ(absolute_value(q(1, 9), Place::padic(3)), mpq_class(9));
    EXPECT_EQ(absolute_value(q(0), Place::padic(3)), mpq_class(0));
    EXPECT_EQ(absolute_value(q(0), Place::archimedean()), mpq_class(0));
    EXPECT_TRUE(padic_valuation(mpq_class(0), 5).is_infinite());
    EXPECT_THROW(Place::padic(4), invalid_field);
    EXPECT_THROW(absolute_value(Scalar::one(Field::prime(3)), Place::archimedean()), field_mismatch);
}

TEST(Place, Parse) {
    EXPECT_TRUE(Place::parse("inf").is_archimedean());
    EXPECT_EQ(Place::parse("p:5").prime(), 5u);
    EXPECT_THROW(Place::parse("p:6"), invalid_field);
    EXPECT_THROW(Place::parse("q:5"), parse_error);
    EXPECT_THROW(Place::parse("p:"), parse_error);
}

TEST(Place, MultiplicativeAndUltrametric) {
    Gen g(5);
    const std::vector<Place> places = {Place::archimedean(), Place::padic(2), Place::padic(3), Place::padic(5)};
    for (int i = 0; i < 300; ++i) {
        const Scalar a(mpq_class(g.integer(-200, 200), g.integer(1, 200)));
        const Scalar b(mpq_class(g.integer(-200, 200), g.integer(1, 200)));
        for (const auto& v : places) {
            ASSERT_EQ(absolute_value(a * b, v), absolute_value(a, v) * absolute_value(b, v));
            if (!v.is_archimedean()) {
                ASSERT_LE(absolute_value(a + b, v), std::max(absolute_value(a, v), absolute_value(b, v)));
            }
        }
    }
}

TEST(Place, ProductFormula) {
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j)
            for (int k = -4; k <= 4; ++k)
                for (int sign : {1, -1}) {
                    mpq_class a(sign);
                    auto mulpow = [&](long base, int e) {
                        for (int t = 0; t < std::abs(e); ++t) a = e > 0 ? mpq_class(a * base) : mpq_class(a / base);
                    };
                    mulpow(2, i);
                    mulpow(3, j);
                    mulpow(5, k);
                    mpq_class prod = absolute_value(a, Place::archimedean());
                    for (std::uint64_t p : {2, 3, 5}) prod *= absolute_value(a, Place::padic(p));
                    ASSERT_EQ(prod, 1) << a.get_str();
                }
}
