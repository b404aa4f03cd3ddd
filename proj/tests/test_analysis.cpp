#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sevo/analysis.hpp"

using namespace sevo;

namespace {

const ModelParams kP = ModelParams::exact(Rational(2), Rational(3, 2), 1);

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, i / double(n - 1)));
    return v;
}

} // namespace

TEST(Exponents, CombinedHandValue) {
    const EstimateSpec sp{EstimateId::CombinedU, DataChannel::U1, TimeRegime::LargeT};
    const NormSetup ns(Rational(2), Rational(1));
    EXPECT_EQ(exact_exponent(sp, kP, Rational(0), ns.inv_r()).value, Rational(1));
    EXPECT_NEAR(theoretical_exponent(sp, kP, ns, 0.0).value, 1.0, 1e-15);
}

TEST(Exponents, SmallTimeLowFrequencyK1) {
    const EstimateSpec sp{EstimateId::L1Low, DataChannel::U1, TimeRegime::SmallT};
    EXPECT_EQ(exact_exponent(sp, kP, Rational(0)).value, Rational(1));
    EXPECT_EQ(exact_exponent({EstimateId::L1Low, DataChannel::U0, TimeRegime::SmallT}, kP, Rational(0)).value,
              Rational(0));
}

TEST(Exponents, SmallTimeHighFrequencyK0) {
    const EstimateSpec sp{EstimateId::L1High, DataChannel::U0, TimeRegime::SmallT};
    // -a / (2 (sigma - delta)) with sigma - delta = 1/2
    EXPECT_EQ(exact_exponent(sp, kP, Rational(3, 2)).value, Rational(-3, 2));
}

TEST(Exponents, DerivativeShiftsByOneAtTwoDelta) {
    const NormSetup ns(Rational(2), Rational(1));
    for (auto id : {EstimateId::CombinedU, EstimateId::CombinedUt}) {
        const EstimateSpec sp{id, DataChannel::U0, TimeRegime::LargeT};
        const auto e0 = exact_exponent(sp, kP, Rational(0), ns.inv_r()).value;
        const auto e1 = exact_exponent(sp, kP, Rational(3), ns.inv_r()).value;
        EXPECT_EQ(e0 - e1, Rational(1));
    }
}

TEST(Exponents, StrictlyDecreasingInA) {
    const EstimateSpec sp{EstimateId::CombinedU, DataChannel::U1, TimeRegime::LargeT};
    for (Rational a(0); a < Rational(5); a = a + Rational(1, 3)) {
        const auto d = exact_exponent(sp, kP, a + Rational(1, 3), Rational(1, 2)).value -
                       exact_exponent(sp, kP, a, Rational(1, 2)).value;
        EXPECT_EQ(d, Rational(-1, 3) / Rational(3));
    }
}

// L^r at r = 1 reduces to L^1, and at r = inf to L^inf, for the large-time envelopes.
TEST(Exponents, InterpolationEndpointsLargeTime) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(1, 40), dim(1, 5);
    for (int i = 0; i < 200; ++i) {
        const Rational sg = Rational(1) + Rational(num(rng), 10);
        const Rational lo = sg / Rational(2);
        const Rational d = lo + (sg - lo) * Rational(num(rng), 41);
        if (!(d > lo) || !(d < sg)) continue;
        const auto p = ModelParams::exact(sg, d, dim(rng));
        const Rational a(num(rng), 7);
        for (auto ch : {DataChannel::U0, DataChannel::U1}) {
            const auto lr1 = exact_exponent({EstimateId::LrTotal, ch, TimeRegime::LargeT}, p, a, Rational(1)).value;
            const auto l1 = exact_exponent({EstimateId::L1Total, ch, TimeRegime::LargeT}, p, a).value;
            EXPECT_EQ(lr1, l1);
            const auto lr0 = exact_exponent({EstimateId::LrTotal, ch, TimeRegime::LargeT}, p, a, Rational(0)).value;
            const auto li = exact_exponent({EstimateId::LinfTotal, ch, TimeRegime::LargeT}, p, a).value;
            EXPECT_EQ(lr0, li);
        }
    }
}

TEST(Exponents, RegimeErrors) {
    const auto visco = ModelParams::exact(Rational(1), Rational(1), 2);
    EXPECT_THROW(exact_exponent({EstimateId::L1High, DataChannel::U0, TimeRegime::LargeT}, visco, Rational(0)),
                 std::domain_error);
    EXPECT_THROW(exact_exponent({EstimateId::LqLqHigh, DataChannel::U0, TimeRegime::LargeT}, kP, Rational(0)),
                 std::domain_error);
    EXPECT_TRUE(exact_exponent({EstimateId::LqLqHigh, DataChannel::U0, TimeRegime::LargeT}, visco, Rational(0))
                    .exponential_decay);
    EXPECT_THROW(exact_exponent({EstimateId::L1Low, DataChannel::U0, TimeRegime::LargeT}, kP, Rational(-1)),
                 std::domain_error);
}

TEST(DecayFit, ExactPowerLaw) {
    std::vector<double> t, v;
    for (int i = 0; i < 40; ++i) {
        t.push_back(10.0 + 5.0 * i);
        v.push_back(3.0 * std::pow(1 + t.back(), -1.5));
    }
    const auto f = fit_decay_exponent(t, v, {0.0, 1e9}, -1.5);
    EXPECT_NEAR(f.fitted_exponent, -1.5, 1e-10);
    EXPECT_EQ(f.verdict, Verdict::WithinBound);
    EXPECT_EQ(fit_decay_exponent(t, v, {0.0, 1e9}, -2.0).verdict, Verdict::ViolatesBound);
    EXPECT_EQ(fit_decay_exponent(t, v, {0.0, 1e9}, -1.55).verdict, Verdict::WithinBound);
}

TEST(DecayFit, NoisyPowerLaw) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> N(0.0, 0.01);
    std::vector<double> t = logspace(10, 1000, 60), v;
    for (double x : t) v.push_back(std::pow(1 + x, -0.75) * (1 + N(rng)));
    EXPECT_NEAR(fit_decay_exponent(t, v, {10, 1000}, 0.0).fitted_exponent, -0.75, 0.02);
}

TEST(DecayFit, ExponentialIsInconclusive) {
    std::vector<double> t = logspace(1, 60, 40), v;
    for (double x : t) v.push_back(std::exp(-x));
    EXPECT_EQ(fit_decay_exponent(t, v, {1, 60}, -1.0).verdict, Verdict::Inconclusive);
}

TEST(DecayFit, Errors) {
    std::vector<double> t = logspace(1, 60, 12), v(12, 1.0);
    v[3] = 0.0;
    EXPECT_THROW(fit_decay_exponent(t, v, {0, 100}, 0.0), std::invalid_argument);
    EXPECT_THROW(fit_decay_exponent(t, std::vector<double>(12, 1.0), {0, 5}, 0.0), std::invalid_argument);
}

TEST(Gevrey, PositiveRateForStructuralDamping) {
    const ModelParams p(2.0, 1.5, 1);
    const auto g = gevrey_fit(p, logspace(1, 10, 10), logspace(4, 32, 8));
    EXPECT_GT(g.c, 0.0);
    EXPECT_GT(g.lower_bound, 0.0);
    EXPECT_THROW(gevrey_fit(ModelParams(1.0, 1.0, 1), {1.0, 2.0}, {4.0}), std::domain_error);
    EXPECT_THROW(gevrey_fit(p, {1.0, 2.0}, {1.0}), std::invalid_argument);
    EXPECT_THROW(gevrey_fit(p, {0.0, 2.0}, {4.0}), std::invalid_argument);
}

TEST(Gevrey, SingleModeGrowthWindow) {
    const ModelParams p(2.0, 1.5, 1);
    for (double t = 1.0; t <= 10.0; t += 0.5) {
        const double r = -std::log(std::abs(kernel_sample(p, t, 8.0).k0)) / (8.0 * t);
        EXPECT_GE(r, 0.4) << t;
        EXPECT_LE(r, 1.2) << t;
    }
}

TEST(Gevrey, InvariantUnderJointRescaling) {
    const ModelParams p(2.0, 1.5, 1);
    // |xi| t preserved when t -> t / 2 and xi -> 2 xi
    std::vector<double> t1 = logspace(2, 10, 8), t2;
    std::vector<double> x1 = logspace(4, 16, 6), x2;
    for (double t : t1) t2.push_back(t / 2);
    for (double x : x1) x2.push_back(2 * x);
    const double c1 = gevrey_fit(p, t1, x1).c, c2 = gevrey_fit(p, t2, x2).c;
    EXPECT_NEAR(c1, c2, 0.05 * c1);
}

TEST(Lemma, ClosedFormAndRegimes) {
    const auto ts = logspace(1, 1e4, 30);
    for (double t : {1.0, 7.5, 300.0}) EXPECT_NEAR(lemma_integral(0, 0, t), t, 1e-10 * t);
    const auto c0 = integral_lemma_check(0, 0, ts);
    EXPECT_EQ(c0.regime, LemmaRegime::MaxBelowOne);
    EXPECT_TRUE(c0.bounded);

    const auto c1 = integral_lemma_check(2, 0.5, ts);
    EXPECT_EQ(c1.regime, LemmaRegime::MaxAboveOne);
    EXPECT_GE(c1.ratio_min, 0.5);
    EXPECT_LE(c1.ratio_max, 5.0);
    EXPECT_TRUE(c1.bounded);

    const auto c2 = integral_lemma_check(1, 1, ts);
    EXPECT_EQ(c2.regime, LemmaRegime::MaxEqualsOne);
    EXPECT_TRUE(c2.bounded);

    EXPECT_TRUE(integral_lemma_check(0.5, 0.25, ts).bounded);
    EXPECT_THROW(integral_lemma_check(1, 1, {2.0, 1.0}), std::invalid_argument);
}
