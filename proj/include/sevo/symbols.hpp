#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "sevo/model.hpp"

namespace sevo {

using cplx = std::complex<double>;

// Relative width of the band |disc| <= tol * |xi|^{4 delta} treated as a double root.
inline constexpr double kCoalesceTol = 1e-9;
// Rate constant c of the exponential envelopes.
inline constexpr double kEnvelopeRate = 0.25;
// K0 starts flat (dK0/dt = 0 at t = 0) while the envelope starts with a
// negative slope, so K0 needs a prefactor. 2/sqrt(e) = max (1+y) e^{-y/2}.
inline const double kK0EnvelopeConstant = 2.0 / std::sqrt(std::exp(1.0));

struct CharRoots {
    cplx lambda1;
    cplx lambda2;
    double discriminant = 0.0;
    bool coalesced = false;
};

struct MultiplierValue {
    cplx k0, k1, dt_k0, dt_k1;
};

// Real-valued kernel values; the multipliers are real functions of (t, |xi|).
struct KernelSample {
    double k0, k1, dt_k0, dt_k1;
};

// b = |xi|^{2 delta}, c = |xi|^{2 sigma}
struct SymbolPowers {
    double b = 0.0;
    double c = 0.0;
};

inline SymbolPowers symbol_powers(const ModelParams& p, double xi_abs) {
    if (xi_abs == 0.0) return {};
    const double lx = std::log(xi_abs);
    return {std::exp(2.0 * p.delta() * lx), std::exp(2.0 * p.sigma() * lx)};
}

namespace detail {
inline void require_unit_mu(const ModelParams& p) {
    if (p.mu() != 1.0) throw std::invalid_argument("symbols: mu must be normalized to 1");
}
} // namespace detail

inline CharRoots characteristic_roots(const ModelParams& p, double xi_abs) {
    detail::require_unit_mu(p);
    if (xi_abs < 0.0) throw std::invalid_argument("symbols: |xi| must be nonnegative");
    CharRoots out;
    if (xi_abs == 0.0) {
        out.coalesced = true;
        return out;
    }
    const auto [b, c] = symbol_powers(p, xi_abs);
    const double disc = b * b - 4.0 * c;
    out.discriminant = disc;
    out.coalesced = std::abs(disc) <= kCoalesceTol * b * b;
    if (out.coalesced) {
        out.lambda1 = out.lambda2 = cplx(-0.5 * b, 0.0);
    } else if (disc < 0.0) {
        const double w = 0.5 * std::sqrt(-disc);
        out.lambda1 = cplx(-0.5 * b, w);
        out.lambda2 = cplx(-0.5 * b, -w);
    } else {
        // The minus branch has no cancellation; the other root follows from Vieta.
        const double l2 = -0.5 * (b + std::sqrt(disc));
        out.lambda2 = cplx(l2, 0.0);
        out.lambda1 = cplx(c / l2, 0.0);
    }
    return out;
}

// Kernel values from precomputed powers. Near the double root the even
// series in disc is used; elsewhere sin/sinh keep the difference quotient
// free of cancellation.
inline KernelSample kernel_sample(const SymbolPowers& pw, double t) {
    const double b = pw.b, c = pw.c;
    KernelSample s{};
    if (c == 0.0 && b == 0.0) {
        s.k0 = 1.0;
        s.k1 = t;
    } else if (t == 0.0) {
        s.k0 = 1.0;
        s.k1 = 0.0;
    } else {
        const double a = -0.5 * b;
        const double disc = b * b - 4.0 * c;
        if (std::abs(disc) <= kCoalesceTol * b * b) {
            const double e = std::exp(a * t);
            const double t2 = disc * t * t;
            const double sinhc = 1.0 + t2 / 24.0;
            s.k1 = e * t * sinhc;
            s.k0 = e * ((1.0 + t2 / 8.0) - a * t * sinhc);
        } else if (disc < 0.0) {
            const double w = 0.5 * std::sqrt(-disc);
            const double e = std::exp(a * t);
            const double sw = std::sin(w * t) / w;
            s.k1 = e * sw;
            s.k0 = e * (std::cos(w * t) - a * sw);
        } else {
            const double h = 0.5 * std::sqrt(disc);
            const double z = h * t;
            if (z < 20.0) {
                const double e = std::exp(a * t);
                const double sh = std::sinh(z) / h;
                s.k1 = e * sh;
                s.k0 = e * (std::cosh(z) - a * sh);
            } else {
                const double l2 = a - h;
                const double l1 = c / l2;
                const double e1 = std::exp(l1 * t);
                const double e2 = std::exp(l2 * t);
                s.k1 = (e1 - e2) / (2.0 * h);
                s.k0 = (l1 * e2 - l2 * e1) / (l1 - l2);
            }
        }
    }
    s.dt_k0 = -c * s.k1;
    s.dt_k1 = s.k0 - b * s.k1;
    return s;
}

inline KernelSample kernel_sample(const ModelParams& p, double t, double xi_abs) {
    detail::require_unit_mu(p);
    if (t < 0.0) throw std::invalid_argument("symbols: t must be nonnegative");
    if (xi_abs < 0.0) throw std::invalid_argument("symbols: |xi| must be nonnegative");
    return kernel_sample(symbol_powers(p, xi_abs), t);
}

inline MultiplierValue multipliers(const ModelParams& p, double t, double xi_abs) {
    const KernelSample s = kernel_sample(p, t, xi_abs);
    return {cplx(s.k0), cplx(s.k1), cplx(s.dt_k0), cplx(s.dt_k1)};
}

// Envelope pair (bound for |K0| up to kK0EnvelopeConstant, bound for |K1|).
inline std::pair<double, double> multiplier_envelope(const ModelParams& p, double t, double xi_abs) {
    if (xi_abs < 0.0 || t < 0.0) throw std::invalid_argument("symbols: envelope needs t, |xi| >= 0");
    double rate;
    if (xi_abs <= 0.5) {
        rate = xi_abs == 0.0 ? 0.0 : std::pow(xi_abs, 2.0 * p.delta());
    } else if (xi_abs >= 2.0) {
        rate = std::pow(xi_abs, 2.0 * (p.sigma() - p.delta()));
    } else {
        throw std::domain_error("symbols: no envelope asserted for 1/2 < |xi| < 2");
    }
    const double e = std::exp(-kEnvelopeRate * rate * t);
    return {e, t * e};
}

} // namespace sevo
