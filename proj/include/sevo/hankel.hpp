#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevo/cutoff.hpp"
#include "sevo/model.hpp"
#include "sevo/quadrature.hpp"
#include "sevo/symbols.hpp"

namespace sevo {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kJtildeSwitch = 12.0;

namespace detail {

inline void check_order(double mu) {
    const double twice = 2.0 * mu;
    if (mu < -0.5 || std::abs(twice - std::round(twice)) > 1e-12)
        throw std::invalid_argument("jtilde: order must be a half-integer >= -1/2");
}

inline double jtilde_series(double mu, double s) {
    const long double q = -0.25L * static_cast<long double>(s) * s;
    long double term = 1.0L / std::tgamma(static_cast<long double>(mu) + 1.0L);
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (k + static_cast<long double>(mu)));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum) && k > 2) break;
    }
    return static_cast<double>(sum * std::pow(2.0L, -static_cast<long double>(mu)));
}

// Hankel asymptotic expansion of J_mu(s), truncated at the smallest term.
inline double bessel_j_asymptotic(double mu, double s) {
    const double m4 = 4.0 * mu * mu;
    const double z8 = 8.0 * s;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (m4 - odd * odd) / (k * z8);
        if (term == 0.0 || std::abs(term) >= last) break;
        last = std::abs(term);
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        default: p += term; break;
        }
        if (last < 1e-17) break;
    }
    const double chi = s - (0.5 * mu + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * s)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace detail

// J_mu(s) / s^mu for half-integer mu >= -1/2.
inline double jtilde(double mu, double s) {
    detail::check_order(mu);
    if (s < 0.0) throw std::invalid_argument("jtilde: s must be nonnegative");
    constexpr double c = 0.79788456080286536; // sqrt(2/pi)
    if (mu == -0.5) return c * std::cos(s);
    if (mu == 0.5) return s == 0.0 ? c : c * std::sin(s) / s;
    if (s <= kJtildeSwitch) return detail::jtilde_series(mu, s);
    return detail::bessel_j_asymptotic(mu, s) / std::pow(s, mu);
}

// Radial symbol g(r) with support and oscillation hints.
struct RadialProfile {
    std::function<double(double)> evaluator;
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    // local oscillation rate (radians per unit r); wavelength is 2 pi / rate
    std::function<double(double)> phase_rate = [](double) { return 1.0; };
    std::vector<double> breakpoints;
};

// Surface measure of the unit sphere in R^n.
inline double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Quadrature rule for x -> int g(r) r^{n-1} Jt_{n/2-1}(r x) dr, valid for x <= x_max.
class RadialRule {
public:
    RadialRule(const RadialProfile& prof, int n, double x_max) : mu_(0.5 * n - 1.0) {
        if (n < 1) throw std::invalid_argument("hankel: n must be >= 1");
        detail::check_order(mu_);
        double hi = prof.r_max;
        if (!std::isfinite(hi)) hi = effective_extent(prof, n);
        std::vector<double> cuts{prof.r_min};
        for (double b : prof.breakpoints)
            if (b > prof.r_min && b < hi) cuts.push_back(b);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> x, w;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            double a = cuts[k];
            const double b = cuts[k + 1];
            while (a < b) {
                const double rate = prof.phase_rate(a) + x_max;
                // 8 Gauss nodes per half wavelength, capped panel width
                double width = std::min(std::numbers::pi / rate, 0.4);
                width = std::min(width, b - a);
                quad::gl8_panel(a, a + width, x, w);
                a += width;
                if (b - a < 1e-14 * std::max(1.0, b)) break;
            }
        }
        r_.reserve(x.size());
        coef_.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double g = prof.evaluator(x[i]);
            if (!std::isfinite(g)) throw std::domain_error("hankel: profile not finite at r = " + std::to_string(x[i]));
            const double c = w[i] * g * std::pow(x[i], n - 1);
            r_.push_back(x[i]);
            coef_.push_back(c);
            abs_mass_ += std::abs(c);
        }
        tail_ = std::isfinite(prof.r_max) ? 0.0 : tail_bound_;
    }

    double operator()(double x_abs) const {
        double s = 0.0;
        if (mu_ == -0.5) {
            for (std::size_t i = 0; i < r_.size(); ++i) s += coef_[i] * std::cos(r_[i] * x_abs);
            return 0.79788456080286536 * s;
        }
        for (std::size_t i = 0; i < r_.size(); ++i) s += coef_[i] * jtilde(mu_, r_[i] * x_abs);
        return s;
    }

    // int |g| r^{n-1} dr: bounds every |F^{-1} g(x)| up to the Jt_mu(0) factor
    double abs_mass() const { return abs_mass_; }
    double tail_bound() const { return tail_; }
    std::size_t size() const { return r_.size(); }

private:
    double mu_;
    std::vector<double> r_, coef_;
    double abs_mass_ = 0.0;
    double tail_ = 0.0;
    double tail_bound_ = 0.0;

    // radius past which |g| r^{n-1} is negligible, for unbounded support
    double effective_extent(const RadialProfile& prof, int n) {
        double peak = 0.0;
        double r = std::max(prof.r_min, 1e-3);
        for (double probe = r; probe < 1.0; probe *= 1.5)
            peak = std::max(peak, std::abs(prof.evaluator(probe)) * std::pow(probe, n));
        double small_run = 0;
        r = std::max(1.0, prof.r_min);
        for (int it = 0; it < 200; ++it) {
            const double v = std::abs(prof.evaluator(r)) * std::pow(r, n);
            peak = std::max(peak, v);
            if (v <= 1e-18 * peak) {
                if (++small_run >= 2) {
                    tail_bound_ = v;
                    return r;
                }
            } else {
                small_run = 0;
            }
            r *= 1.25;
        }
        throw TruncationError("hankel: profile does not decay; support cannot be truncated");
    }
};

// Inverse transform of a radial symbol at radius |x| (symmetric normalization).
inline double radial_inverse_fourier(const RadialProfile& prof, int n, double x_abs) {
    if (x_abs < 0.0) throw std::invalid_argument("hankel: |x| must be nonnegative");
    RadialRule rule(prof, n, x_abs);
    const double v = rule(x_abs);
    if (rule.tail_bound() > 1e-6 * std::abs(v) && rule.tail_bound() > 1e-14 * rule.abs_mass())
        throw TruncationError("hankel: truncated tail exceeds 1e-6 of the value");
    return v;
}

enum class Which { K0, K1 };
inline const char* to_string(Which w) { return w == Which::K0 ? "K0" : "K1"; }

// |xi|^a K_j(t, xi) restricted to a frequency zone, as a radial profile.
inline RadialProfile kernel_profile(const ModelParams& p, double a, Which which, Zone zone, double t) {
    detail::require_unit_mu(p);
    RadialProfile prof;
    prof.evaluator = [p, a, which, zone, t](double r) {
        const double wz = zone_weight(zone, r);
        if (wz == 0.0) return 0.0;
        const KernelSample s = kernel_sample(symbol_powers(p, r), t);
        const double k = which == Which::K0 ? s.k0 : s.k1;
        return (a == 0.0 ? 1.0 : std::pow(r, a)) * k * wz;
    };
    const double sg = p.sigma();
    prof.phase_rate = [sg, t](double r) { return sg * std::pow(std::max(r, 1.0), sg - 1.0) * t + 1.0; };
    prof.breakpoints = {0.5, 1.0};
    if (zone == Zone::Low) {
        prof.r_max = 1.0;
    } else {
        prof.r_min = zone == Zone::High ? 0.5 : 0.0;
        // coalescence point, where the symbol changes form
        const double ex = 4.0 * p.delta() - 2.0 * p.sigma();
        if (ex > 0.0) prof.breakpoints.push_back(std::pow(4.0, 1.0 / ex));
    }
    return prof;
}

struct KernelNormOptions {
    double shell_tol = 1e-6;    // stop doubling when a dyadic shell adds less than this fraction
    double x_cap = 0.0;         // largest radius sampled; 0 picks a per-dimension default
    int samples_per_wavelength = 16;
    double accept_tol = 1e-3;   // relative error level for an accepted value
};

struct KernelNormSeries {
    std::vector<double> times;
    std::vector<double> l1_values;
    std::vector<double> linf_values;
    double truncation_radius = 0.0;
    double quadrature_error_estimate = 0.0;
    // per-time relative error estimates, error / value
    std::vector<double> relative_errors;
};

namespace detail {

struct ShellSum {
    double integral = 0.0;
    double coarse = 0.0;
    double sup = 0.0;
};

inline ShellSum integrate_shell(const RadialRule& rule, int n, double x0, double x1, double h) {
    const auto m = static_cast<std::size_t>(std::ceil((x1 - x0) / h));
    const std::size_t cells = m % 2 == 0 ? m : m + 1; // even, for the coarse pass
    const double hh = (x1 - x0) / static_cast<double>(cells);
    std::vector<double> f(cells + 1), fc;
    ShellSum out;
    for (std::size_t i = 0; i <= cells; ++i) {
        const double x = x0 + hh * static_cast<double>(i);
        const double k = rule(x);
        out.sup = std::max(out.sup, std::abs(k));
        f[i] = k * std::pow(x, n - 1);
    }
    fc.reserve(cells / 2 + 1);
    for (std::size_t i = 0; i <= cells; i += 2) fc.push_back(f[i]);
    out.integral = quad::integrate_abs_uniform(f, hh);
    out.coarse = quad::integrate_abs_uniform(fc, 2.0 * hh);
    return out;
}

} // namespace detail

// L1 and L-infinity norms of F^{-1}(|xi|^a K_j(t) zone) for each t.
inline KernelNormSeries kernel_norms(const ModelParams& p, double a, Which which, Zone zone,
                                     const std::vector<double>& times, const KernelNormOptions& opt = {}) {
    if (a < 0.0) throw std::invalid_argument("hankel: derivative order a must be >= 0");
    if (zone != Zone::Low && p.regime() == Regime::ViscoElastic)
        throw std::domain_error("hankel: high-frequency L1 kernels are unsupported for delta = sigma");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw std::invalid_argument("hankel: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("hankel: times must be ascending");
    }
    const int n = p.n();
    const double cn = sphere_area(n);
    const double cap = opt.x_cap > 0.0 ? opt.x_cap : (n == 1 ? 4096.0 : (n == 2 ? 2048.0 : 512.0));

    KernelNormSeries out;
    out.times = times;
    for (double t : times) {
        const RadialProfile prof = kernel_profile(p, a, which, zone, t);
        // sample spacing from the largest frequency carrying weight
        double r_sup = 1.0;
        if (zone != Zone::Low) {
            // find extent of the profile by probing
            double r = 1.0, peak = 0.0;
            for (int it = 0; it < 200; ++it) {
                const double v = std::abs(prof.evaluator(r)) * std::pow(r, n);
                peak = std::max(peak, v);
                if (v < 1e-14 * peak) break;
                r *= 1.25;
            }
            r_sup = r;
        }
        const double h = 2.0 * std::numbers::pi / (r_sup * opt.samples_per_wavelength);

        // first region covers the main body: group velocity times t, damped
        const double reff = std::min(1.0, std::pow(2.0 * 18.4 / t, 1.0 / (2.0 * p.delta())));
        const double speed = p.sigma() * std::pow(std::max(reff, r_sup > 1.0 ? r_sup : reff), p.sigma() - 1.0);
        double x_hi = std::max(32.0, 2.0 * speed * t);
        x_hi = std::min(x_hi, cap);

        double total = 0.0, err = 0.0, sup = 0.0;
        {
            RadialRule rule(prof, n, x_hi);
            const auto s = detail::integrate_shell(rule, n, 0.0, x_hi, h);
            total = s.integral;
            err = std::abs(s.integral - s.coarse) / 15.0;
            sup = s.sup;
        }
        double last_shell = total, prev_shell = 0.0;
        bool converged = false;
        while (!converged) {
            if (x_hi >= cap) break;
            const double x_lo = x_hi;
            x_hi = std::min(2.0 * x_hi, cap);
            RadialRule rule(prof, n, x_hi);
            const auto s = detail::integrate_shell(rule, n, x_lo, x_hi, h);
            prev_shell = last_shell;
            last_shell = s.integral;
            total += s.integral;
            err += std::abs(s.integral - s.coarse) / 15.0;
            sup = std::max(sup, s.sup);
            converged = s.integral < opt.shell_tol * total;
        }
        if (!converged) {
            // geometric extrapolation of the remaining dyadic shells
            const double ratio = prev_shell > 0.0 ? last_shell / prev_shell : 1.0;
            const double tail = ratio < 1.0 ? last_shell * ratio / (1.0 - ratio)
                                            : std::numeric_limits<double>::infinity();
            total += tail;
            err += tail;
        }
        out.l1_values.push_back(cn * total);
        out.linf_values.push_back(sup);
        out.relative_errors.push_back(total > 0.0 ? err / total : 0.0);
        out.quadrature_error_estimate = std::max(out.quadrature_error_estimate, cn * err);
        out.truncation_radius = std::max(out.truncation_radius, x_hi);
    }
    return out;
}

} // namespace sevo
