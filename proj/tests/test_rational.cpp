#include <gtest/gtest.h>

#include <random>

#include "sevo/rational.hpp"

using sevo::Rational;

TEST(Rational, ReducesAndNormalizesSign) {
    const Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic) {
    const Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_TRUE(b < a);
    EXPECT_EQ(rmax(a, b), a);
    EXPECT_EQ(rmin(a, b), b);
}

TEST(Rational, FloorCeil) {
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(7, 2).ceil(), 4);
    EXPECT_EQ(Rational(-7, 2).floor(), -4);
    EXPECT_EQ(Rational(-7, 2).ceil(), -3);
    EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("317/79"), Rational(317, 79));
    EXPECT_EQ(Rational::parse("11/10"), Rational::parse("1.1"));
    EXPECT_EQ(Rational::parse("-0.25"), Rational(-1, 4));
    EXPECT_EQ(Rational::parse("4"), Rational(4));
    EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
    EXPECT_EQ(Rational(369, 79).str(), "369/79");
    EXPECT_EQ(Rational(4).str(), "4");
}

TEST(Rational, OverflowThrows) {
    const Rational big(INT64_MAX / 2 + 1);
    EXPECT_THROW(big * Rational(4), std::overflow_error);
}

TEST(Rational, FieldAxiomsOnRandomDraws) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-50, 50), e(1, 50);
    for (int i = 0; i < 500; ++i) {
        const Rational a(d(rng), e(rng)), b(d(rng), e(rng)), c(d(rng), e(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (b.sign() != 0) {
            EXPECT_EQ(a / b * b, a);
        }
        EXPECT_NEAR((a + b).to_double(), a.to_double() + b.to_double(), 1e-12);
    }
}
