#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sevo/model.hpp"
#include "sevo/rational.hpp"
#include "sevo/symbols.hpp"

namespace sevo {

// Families of linear estimates with a time envelope t^e or (1+t)^e.
enum class EstimateId {
    L1Low,           // ||F^-1(|xi|^a K chi)||_L1
    L1High,          // ||F^-1(|xi|^a K (1-chi))||_L1, delta < sigma
    L1Total,         // ||F^-1(|xi|^a K)||_L1, delta < sigma
    LinfLow,         // low-frequency L^inf
    LinfHigh,        // high-frequency L^inf, delta < sigma
    LinfTotal,       // delta < sigma
    LrLow,           // low-frequency L^r, interpolated
    LrTotal,         // L^r, interpolated, delta < sigma
    ConjugateFreeU,  // L^p-L^q for |D|^a u, delta < sigma
    ConjugateFreeUt, // L^p-L^q for |D|^a u_t, delta < sigma
    CombinedU,       // (L^m cap L^q)-L^q for |D|^a u, envelope in (1+t)
    CombinedUt,      // same for |D|^a u_t
    LqLqHigh,        // high-frequency L^q-L^q, delta = sigma: e^{-ct}
};

enum class TimeRegime { SmallT, LargeT };

// Which datum the estimate propagates: u0 (kernel K0) or u1 (kernel K1).
enum class DataChannel { U0, U1 };

struct EstimateSpec {
    EstimateId id = EstimateId::L1Low;
    DataChannel channel = DataChannel::U0;
    TimeRegime regime = TimeRegime::LargeT;
};

inline const char* to_string(EstimateId id) {
    switch (id) {
    case EstimateId::L1Low: return "l1_low";
    case EstimateId::L1High: return "l1_high";
    case EstimateId::L1Total: return "l1_total";
    case EstimateId::LinfLow: return "linf_low";
    case EstimateId::LinfHigh: return "linf_high";
    case EstimateId::LinfTotal: return "linf_total";
    case EstimateId::LrLow: return "lr_low";
    case EstimateId::LrTotal: return "lr_total";
    case EstimateId::ConjugateFreeU: return "lp_lq_u";
    case EstimateId::ConjugateFreeUt: return "lp_lq_ut";
    case EstimateId::CombinedU: return "combined_u";
    case EstimateId::CombinedUt: return "combined_ut";
    default: return "lq_lq_high";
    }
}

// Envelope exponent, or the marker for exponential decay e^{-ct}.
template <class T>
struct Exponent {
    bool exponential_decay = false;
    T value{};
};

namespace detail {

inline void estimate_error(const std::string& msg) { throw std::domain_error("estimate: " + msg); }

template <class T>
Exponent<T> exponent_table(const EstimateSpec& spec, const T& sigma, const T& delta, int n, const T& inv_r,
                           const T& a) {
    const bool visco = sigma == delta;
    if (a < T(0)) estimate_error("derivative order a must be >= 0");
    if (inv_r < T(0) || inv_r > T(1)) estimate_error("1/r must lie in [0, 1]");
    const T one(1), two(2), nn(n), h(n / 2);
    const T A = one - sigma / (two * delta);
    const T k1 = spec.channel == DataChannel::U1 ? one : T(0);
    const bool small = spec.regime == TimeRegime::SmallT;
    auto need_structural = [&] {
        if (visco) estimate_error("requires structural damping delta < sigma");
    };
    auto val = [](T v) { return Exponent<T>{false, v}; };
    switch (spec.id) {
    case EstimateId::L1Low:
        if (small) return val(k1);
        return spec.channel == DataChannel::U0 ? val((two + h) * A - a / (two * delta))
                                               : val(one + (one + h) * A - a / (two * delta));
    case EstimateId::L1High:
        need_structural();
        if (spec.channel == DataChannel::U0)
            return val(small ? T(0) - a / (two * (sigma - delta)) : T(0) - a / (two * delta));
        return val(small ? one - a / (two * delta) : one - a / (two * (sigma - delta)));
    case EstimateId::L1Total:
        need_structural();
        if (!small) return exponent_table(EstimateSpec{EstimateId::L1Low, spec.channel, spec.regime}, sigma, delta, n,
                                          inv_r, a);
        return val(spec.channel == DataChannel::U0 ? T(0) - a / (two * (sigma - delta)) : one - a / (two * delta));
    case EstimateId::LinfLow:
        if (small) return val(k1);
        return val(k1 - (nn + a) / (two * delta));
    case EstimateId::LinfHigh:
        need_structural();
        return val(k1 - (nn + a) / (two * (sigma - delta)));
    case EstimateId::LinfTotal:
        need_structural();
        return val(k1 - (nn + a) / (two * (small ? sigma - delta : delta)));
    case EstimateId::LrLow:
        if (small) return val(k1);
        [[fallthrough]];
    case EstimateId::LrTotal:
    case EstimateId::ConjugateFreeU:
        if (spec.id != EstimateId::LrLow) need_structural();
        if (small) return val(k1 - nn / (two * (sigma - delta)) * (one - inv_r) - a / (two * (sigma - delta)));
        return spec.channel == DataChannel::U0
                   ? val((two + h) * A * inv_r - nn / (two * delta) * (one - inv_r) - a / (two * delta))
                   : val(one + (one + h) * A * inv_r - nn / (two * delta) * (one - inv_r) - a / (two * delta));
    case EstimateId::ConjugateFreeUt: {
        need_structural();
        const T spread = nn / (two * delta) * (one - inv_r);
        if (small) return val(k1 - nn / (two * (sigma - delta)) * (one - inv_r) - (a + two * delta) / (two * (sigma - delta)));
        return spec.channel == DataChannel::U0
                   ? val(one + (one + h) * A * inv_r - spread - (a + two * sigma) / (two * delta))
                   : val((two + h) * A * inv_r - spread - a / (two * delta));
    }
    case EstimateId::CombinedU: {
        const CombinedRates<T> r{sigma, delta, inv_r, n};
        return val(spec.channel == DataChannel::U0 ? r.u_from_u0(a) : r.u_from_u1(a));
    }
    case EstimateId::CombinedUt: {
        const CombinedRates<T> r{sigma, delta, inv_r, n};
        return val(spec.channel == DataChannel::U0 ? r.ut_from_u0(a) : r.ut_from_u1(a));
    }
    case EstimateId::LqLqHigh:
        if (!visco) estimate_error("exponential high-frequency estimate requires delta = sigma");
        return Exponent<T>{true, T(0)};
    }
    estimate_error("unknown estimate");
    return {};
}

} // namespace detail

// inv_r = 1/r for the L^r and paired estimates (1/r = 1 + 1/q - 1/p); it is
// ignored by the L^1 and L^inf families.
inline Exponent<double> theoretical_exponent(const EstimateSpec& spec, const ModelParams& p, double a,
                                             double inv_r = 1.0) {
    return detail::exponent_table<double>(spec, p.sigma(), p.delta(), p.n(), inv_r, a);
}

inline Exponent<double> theoretical_exponent(const EstimateSpec& spec, const ModelParams& p, const NormSetup& ns,
                                             double a) {
    return theoretical_exponent(spec, p, a, ns.inv_r().to_double());
}

inline Exponent<Rational> exact_exponent(const EstimateSpec& spec, const ModelParams& p, const Rational& a,
                                         const Rational& inv_r = Rational(1)) {
    return detail::exponent_table<Rational>(spec, p.sigma_q(), p.delta_q(), p.n(), inv_r, a);
}

// Ordinary least squares y = c0 + c1 x.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
    double residual_rms = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit: need at least two paired samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit: regressor has no spread");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        ss += e * e;
    }
    f.residual_rms = std::sqrt(ss / n);
    f.slope_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : std::numeric_limits<double>::infinity();
    return f;
}

enum class Verdict { WithinBound, ViolatesBound, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::WithinBound: return "within_bound";
    case Verdict::ViolatesBound: return "violates_bound";
    default: return "inconclusive";
    }
}

struct DecayFit {
    double fitted_exponent = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    double residual_rms = 0.0;
    double theoretical_exponent = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::size_t samples = 0;
};

inline constexpr double kDefaultSlack = 0.1;
inline constexpr double kResidualLimit = 0.05;
inline constexpr std::size_t kMinFitSamples = 10;

// Slope of log(value) against log(1 + t) over the window.
inline DecayFit fit_decay_exponent(const std::vector<double>& times, const std::vector<double>& values,
                                   std::pair<double, double> window, double theoretical, double slack = kDefaultSlack) {
    if (times.size() != values.size()) throw std::invalid_argument("decay fit: times and values differ in length");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window.first || times[i] > window.second) continue;
        if (!(values[i] > 0.0)) throw std::invalid_argument("decay fit: values must be positive");
        x.push_back(std::log1p(times[i]));
        y.push_back(std::log(values[i]));
    }
    if (x.size() < kMinFitSamples) throw std::invalid_argument("decay fit: fewer than 10 samples in window");
    const LineFit lf = fit_line(x, y);
    DecayFit f;
    f.fitted_exponent = lf.slope;
    f.window = window;
    f.residual_rms = lf.residual_rms;
    f.theoretical_exponent = theoretical;
    f.samples = x.size();
    if (lf.residual_rms >= kResidualLimit) f.verdict = Verdict::Inconclusive;
    else f.verdict = lf.slope > theoretical + slack ? Verdict::ViolatesBound : Verdict::WithinBound;
    return f;
}

struct GevreyFit {
    double c = 0.0;
    double stderr_c = 0.0;
    double lower_bound = 0.0; // c - 2 stderr
    double intercept = 0.0;
    std::size_t samples = 0;
};

// Fits -log|K0(t, xi)| = c |xi|^{2(sigma - delta)} t - log C over the grid t_list x xi_list.
inline GevreyFit gevrey_fit(const ModelParams& p, const std::vector<double>& t_list, const std::vector<double>& xi_list) {
    if (p.regime() == Regime::ViscoElastic) throw std::domain_error("gevrey fit: requires delta < sigma");
    std::vector<double> x, y;
    for (double xi : xi_list) {
        if (!(xi >= 2.0)) throw std::invalid_argument("gevrey fit: frequencies must satisfy |xi| >= 2");
        for (double t : t_list) {
            if (!(t > 0.0)) throw std::invalid_argument("gevrey fit: times must be positive");
            const double k0 = std::abs(multipliers(p, t, xi).k0);
            if (!(k0 > 0.0)) continue; // underflow
            x.push_back(std::pow(xi, 2.0 * (p.sigma() - p.delta())) * t);
            y.push_back(-std::log(k0));
        }
    }
    if (x.size() < 3) throw std::invalid_argument("gevrey fit: need at least three usable samples");
    const LineFit lf = fit_line(x, y);
    GevreyFit g{lf.slope, lf.slope_stderr, lf.slope - 2.0 * lf.slope_stderr, lf.intercept, x.size()};
    if (!(g.lower_bound > 0.0)) throw std::runtime_error("gevrey fit: decay rate not resolved (lower bound <= 0)");
    return g;
}

enum class LemmaRegime { MaxAboveOne, MaxEqualsOne, MaxBelowOne };

inline const char* to_string(LemmaRegime r) {
    switch (r) {
    case LemmaRegime::MaxAboveOne: return "max>1";
    case LemmaRegime::MaxEqualsOne: return "max=1";
    default: return "max<1";
    }
}

struct LemmaCheck {
    LemmaRegime regime = LemmaRegime::MaxBelowOne;
    std::vector<double> times, integrals, envelopes, ratios;
    double ratio_min = 0.0, ratio_max = 0.0;
    bool bounded = false;
};

inline constexpr double kLemmaSpreadLimit = 10.0;

// int_0^t (1 + t - tau)^{-alpha} (1 + tau)^{-beta} dtau
inline double lemma_integral(double alpha, double beta, double t) {
    if (t == 0.0) return 0.0;
    auto f = [&](double tau) { return std::pow(1.0 + t - tau, -alpha) * std::pow(1.0 + tau, -beta); };
    double err = 0.0;
    // split at the midpoint so both endpoint layers are resolved
    const double m = 0.5 * t;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, m, 20, 1e-12, &err) +
           boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, m, t, 20, 1e-12, &err);
}

inline double lemma_envelope(double alpha, double beta, double t) {
    const double mx = std::max(alpha, beta), mn = std::min(alpha, beta);
    if (mx > 1.0) return std::pow(1.0 + t, -mn);
    if (mx == 1.0) return std::pow(1.0 + t, -mn) * std::log(2.0 + t);
    return std::pow(1.0 + t, 1.0 - alpha - beta);
}

// Ratios I(t) / envelope(t); bounded when max/min ratio stays below kLemmaSpreadLimit.
inline LemmaCheck integral_lemma_check(double alpha, double beta, const std::vector<double>& t_list) {
    for (std::size_t i = 0; i < t_list.size(); ++i)
        if (!(t_list[i] > 0.0) || (i > 0 && !(t_list[i] > t_list[i - 1])))
            throw std::invalid_argument("lemma check: times must be positive and ascending");
    LemmaCheck c;
    const double mx = std::max(alpha, beta);
    c.regime = mx > 1.0 ? LemmaRegime::MaxAboveOne : (mx == 1.0 ? LemmaRegime::MaxEqualsOne : LemmaRegime::MaxBelowOne);
    c.ratio_min = std::numeric_limits<double>::infinity();
    c.ratio_max = 0.0;
    for (double t : t_list) {
        const double i = lemma_integral(alpha, beta, t), e = lemma_envelope(alpha, beta, t);
        c.times.push_back(t);
        c.integrals.push_back(i);
        c.envelopes.push_back(e);
        c.ratios.push_back(i / e);
        c.ratio_min = std::min(c.ratio_min, i / e);
        c.ratio_max = std::max(c.ratio_max, i / e);
    }
    c.bounded = !t_list.empty() && c.ratio_min > 0.0 && c.ratio_max / c.ratio_min <= kLemmaSpreadLimit;
    return c;
}

} // namespace sevo
