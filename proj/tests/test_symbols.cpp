#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sevo/symbols.hpp"

using namespace sevo;

namespace {

double rel(double a, double b, double scale = 0.0) {
    return std::abs(a - b) / std::max({std::abs(b), scale, 1e-300});
}

} // namespace

TEST(Roots, ZeroFrequency) {
    const auto r = characteristic_roots(ModelParams(2.0, 1.5, 1), 0.0);
    EXPECT_EQ(r.lambda1, cplx(0.0));
    EXPECT_EQ(r.lambda2, cplx(0.0));
}

TEST(Roots, DoubleRootAtCoalescence) {
    const auto r = characteristic_roots(ModelParams(2.0, 1.5, 1), 2.0);
    EXPECT_TRUE(r.coalesced);
    EXPECT_NEAR(r.discriminant, 0.0, 1e-12);
    EXPECT_NEAR(r.lambda1.real(), -4.0, 1e-12);
    EXPECT_NEAR(r.lambda2.real(), -4.0, 1e-12);
}

TEST(Roots, ComplexPair) {
    const auto r = characteristic_roots(ModelParams(1.0, 1.0, 1), 1.0);
    EXPECT_FALSE(r.coalesced);
    const cplx a(-0.5, std::sqrt(3.0) / 2.0);
    EXPECT_LT(std::abs(r.lambda1 - a) + std::abs(r.lambda2 - std::conj(a)), 1e-14);
}

TEST(Roots, VietaAcrossFrequencies) {
    for (auto [s, d] : {std::pair{2.0, 1.5}, {1.5, 1.0}, {1.0, 1.0}, {3.0, 2.0}}) {
        const ModelParams p(s, d, 2);
        for (double xi = 1e-3; xi < 1e3; xi *= 1.37) {
            const auto r = characteristic_roots(p, xi);
            const double b = std::pow(xi, 2 * d), c = std::pow(xi, 2 * s);
            EXPECT_LT(std::abs(r.lambda1 + r.lambda2 + b), 1e-12 * b) << xi;
            EXPECT_LT(std::abs(r.lambda1 * r.lambda2 - c), 1e-12 * c) << xi;
            if (r.discriminant < 0) {
                EXPECT_LT(std::abs(r.lambda2 - std::conj(r.lambda1)), 1e-12 * b);
            }
        }
    }
}

TEST(Roots, RejectsNonUnitMu) {
    EXPECT_THROW(characteristic_roots(ModelParams(2.0, 1.5, 1, 2.0), 1.0), std::invalid_argument);
}

TEST(Multipliers, InitialValues) {
    const ModelParams p(2.0, 1.5, 1);
    for (double xi : {0.0, 0.3, 2.0, 7.0}) {
        const auto m = multipliers(p, 0.0, xi);
        EXPECT_EQ(m.k0, cplx(1.0));
        EXPECT_EQ(m.k1, cplx(0.0));
        EXPECT_EQ(m.dt_k0, cplx(0.0));
        EXPECT_EQ(m.dt_k1, cplx(1.0));
    }
}

TEST(Multipliers, CoalescedLimit) {
    const auto m = multipliers(ModelParams(2.0, 1.5, 1), 1.0, 2.0);
    EXPECT_LT(rel(m.k0.real(), 5.0 * std::exp(-4.0)), 1e-12);
    EXPECT_LT(rel(m.k1.real(), std::exp(-4.0)), 1e-12);
}

TEST(Multipliers, MatchesOdeIntegration) {
    const auto m = multipliers(ModelParams(2.0, 1.5, 1), 2.0, 0.5);
    const auto o = oracle::kernels(2.0, 1.5, 0.5, 2.0);
    EXPECT_LT(rel(m.k0.real(), o[0]), 1e-8);
    EXPECT_LT(rel(m.k1.real(), o[1]), 1e-8);
    EXPECT_LT(rel(m.dt_k0.real(), o[2]), 1e-8);
    EXPECT_LT(rel(m.dt_k1.real(), o[3]), 1e-8);
}

TEST(Multipliers, RandomOdeSamples) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 40; ++i) {
        const double s = 1.0 + 2.0 * U(rng);
        const double d = s / 2 + 0.05 + (s / 2 - 0.05) * U(rng);
        const double xi = 3.0 * U(rng), t = 5.0 * U(rng);
        const auto k = kernel_sample(ModelParams(s, d, 1), t, xi);
        const auto o = oracle::kernels(s, d, xi, t);
        const double scale = std::max({std::abs(o[0]), std::abs(o[1]), 1e-12});
        EXPECT_LT(std::abs(k.k0 - o[0]) / scale, 1e-8) << s << " " << d << " " << xi << " " << t;
        EXPECT_LT(std::abs(k.k1 - o[1]) / scale, 1e-8);
    }
}

TEST(Multipliers, DerivativeRelationsAndFiniteDifferences) {
    for (auto [s, d] : {std::pair{2.0, 1.5}, {1.0, 1.0}, {1.5, 1.2}}) {
        const ModelParams p(s, d, 1);
        for (double xi : {0.2, 0.9, 1.7, 3.0}) {
            const double b = std::pow(xi, 2 * d), c = std::pow(xi, 2 * s);
            for (double t : {0.3, 1.0, 2.5}) {
                const auto k = kernel_sample(p, t, xi);
                EXPECT_LT(std::abs(k.dt_k0 + c * k.k1), 1e-10 * std::max(1.0, std::abs(c * k.k1)));
                EXPECT_LT(std::abs(k.dt_k1 - (k.k0 - b * k.k1)), 1e-10 * std::max({1.0, std::abs(k.k0), std::abs(b * k.k1)}));

                const double h = 1e-4;
                const auto kp = kernel_sample(p, t + h, xi), km = kernel_sample(p, t - h, xi);
                EXPECT_NEAR((kp.k0 - km.k0) / (2 * h), k.dt_k0, 1e-6 * std::max(1.0, c));
                EXPECT_NEAR((kp.k1 - km.k1) / (2 * h), k.dt_k1, 1e-6 * std::max(1.0, c));
                const double hh = 1e-3;
                const auto kpp = kernel_sample(p, t + hh, xi), kmm = kernel_sample(p, t - hh, xi);
                const double k2 = (kpp.k0 - 2 * k.k0 + kmm.k0) / (hh * hh);
                EXPECT_LT(std::abs(k2 + b * k.dt_k0 + c * k.k0), 1e-6 * std::max(1.0, c * c));
            }
        }
    }
}

TEST(Multipliers, ContinuousAcrossCoalescence) {
    const ModelParams p(2.0, 1.5, 1);
    const double star = 2.0;
    const auto lim = kernel_sample(p, 1.0, star);
    for (double eps : {1e-6, 1e-8, 1e-10}) {
        for (double side : {-1.0, 1.0}) {
            const auto k = kernel_sample(p, 1.0, star * (1 + side * eps));
            EXPECT_LT(rel(k.k0, lim.k0), 1e-8 + 50 * eps);
            EXPECT_LT(rel(k.k1, lim.k1), 1e-8 + 50 * eps);
        }
    }
}

TEST(Multipliers, RealValued) {
    const ModelParams p(1.0, 1.0, 3);
    for (double xi = 0.01; xi < 50; xi *= 1.5) {
        const auto m = multipliers(p, 1.3, xi);
        EXPECT_LE(std::abs(m.k0.imag()), 1e-12 * std::abs(m.k0) + 1e-300);
        EXPECT_LE(std::abs(m.k1.imag()), 1e-12 * std::abs(m.k1) + 1e-300);
    }
}

TEST(Envelope, ExamplesAndZones) {
    const ModelParams p(2.0, 1.5, 1);
    const auto z = multiplier_envelope(p, 3.0, 0.0);
    EXPECT_DOUBLE_EQ(z.first, 1.0);
    EXPECT_DOUBLE_EQ(z.second, 3.0);
    const auto e = multiplier_envelope(p, 1.0, 4.0);
    EXPECT_NEAR(e.first, std::exp(-4.0 * kEnvelopeRate), 1e-15);
    EXPECT_NEAR(e.second, std::exp(-4.0 * kEnvelopeRate), 1e-15);
    EXPECT_THROW(multiplier_envelope(p, 1.0, 1.0), std::domain_error);
}

TEST(Envelope, BoundsSampledMultipliers) {
    for (auto [s, d] : {std::pair{2.0, 1.5}, {1.5, 1.0}, {1.0, 1.0}, {3.0, 1.6}}) {
        const ModelParams p(s, d, 1);
        std::vector<double> xs;
        for (double xi = 1e-3; xi <= 0.5; xi *= 1.3) xs.push_back(xi);
        for (double xi = 2.0; xi <= 40; xi *= 1.3) xs.push_back(xi);
        for (double xi : xs) {
            for (double t = 0.01; t < 200; t *= 1.4) {
                const auto k = kernel_sample(p, t, xi);
                const auto [e0, e1] = multiplier_envelope(p, t, xi);
                EXPECT_LE(std::abs(k.k0), kK0EnvelopeConstant * e0 * (1 + 1e-12)) << s << d << xi << t;
                EXPECT_LE(std::abs(k.k1), e1 * (1 + 1e-12)) << s << d << xi << t;
            }
        }
    }
}
