#include <gtest/gtest.h>

#include "sevo/model.hpp"

using namespace sevo;

TEST(ModelParams, RegimeAndValidation) {
    EXPECT_EQ(ModelParams(2.0, 1.5, 1).regime(), Regime::Structural);
    EXPECT_EQ(ModelParams(1.1, 1.1, 5).regime(), Regime::ViscoElastic);
    EXPECT_THROW(ModelParams(0.5, 0.4, 1), std::invalid_argument);
    EXPECT_THROW(ModelParams(2.0, 1.0, 1), std::invalid_argument); // delta = sigma/2
    EXPECT_THROW(ModelParams(2.0, 2.5, 1), std::invalid_argument);
    EXPECT_THROW(ModelParams(2.0, 1.5, 0), std::invalid_argument);
    EXPECT_THROW(ModelParams(2.0, 1.5, 1, 0.0), std::invalid_argument);
}

TEST(ModelParams, ExactKeepsRationals) {
    const auto p = ModelParams::exact(Rational(9, 5), Rational(1), 4);
    EXPECT_TRUE(p.is_exact());
    EXPECT_EQ(p.sigma_q(), Rational(9, 5));
    EXPECT_DOUBLE_EQ(p.sigma(), 1.8);
    EXPECT_THROW(ModelParams(2.0, 1.5, 1).sigma_q(), std::logic_error);
    EXPECT_EQ(ModelParams::exact(Rational(11, 10), Rational(11, 10), 5).regime(), Regime::ViscoElastic);
}

TEST(NormSetup, ConjugateRelation) {
    const NormSetup ns(Rational(4), Rational(1));
    EXPECT_EQ(ns.inv_r(), Rational(1, 4));
    EXPECT_EQ(ns.r(), Rational(4));
    EXPECT_THROW(NormSetup(Rational(2), Rational(2)), std::invalid_argument);
    EXPECT_THROW(NormSetup(Rational(2), Rational(3)), std::invalid_argument);
    EXPECT_THROW(NormSetup(Rational(1), Rational(1)), std::invalid_argument);
}

TEST(Notation, PositivePartAndCeil) {
    EXPECT_EQ(positive_part(-1.5), 0.0);
    EXPECT_EQ(positive_part(Rational(3, 2)), Rational(3, 2));
    EXPECT_EQ(ceil_min_int(Rational(3, 10)), 1);
    EXPECT_EQ(ceil_min_int(2.0), 2);
}

TEST(Kappa, ExampleBlockValues) {
    const NormSetup ns(Rational(4), Rational(1));
    const auto p1 = ModelParams::exact(Rational(9, 5), Rational(1), 4);
    EXPECT_EQ(kappa1(p1, ns), Rational(43, 40));
    EXPECT_EQ(kappa2(p1, ns), Rational(1, 10));
    const auto p2 = ModelParams::exact(Rational(11, 10), Rational(11, 10), 5);
    EXPECT_EQ(kappa1(p2, ns), Rational(11, 8));
    EXPECT_EQ(kappa2(p2, ns), Rational(1, 2));
}

TEST(CombinedRates, HandEvaluatedUChannel) {
    // n=1, sigma=2, delta=3/2, q=2, m=1: 1 + (1/3)(1/2) - (1/3)(1/2) = 1
    const auto p = ModelParams::exact(Rational(2), Rational(3, 2), 1);
    const NormSetup ns(Rational(2), Rational(1));
    const auto r = exact_rates(p, ns.inv_r());
    EXPECT_EQ(r.u_from_u1(Rational(0)), Rational(1));
    EXPECT_EQ(r.u_from_u0(Rational(0)) - r.u_from_u0(Rational(3)), Rational(1));
    const auto d = numeric_rates(ModelParams(2.0, 1.5, 1), 0.5);
    EXPECT_NEAR(d.u_from_u1(0.0), 1.0, 1e-15);
}
