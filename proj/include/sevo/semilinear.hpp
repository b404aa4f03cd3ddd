#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevo/fft.hpp"
#include "sevo/model.hpp"
#include "sevo/propagator.hpp"

namespace sevo {

enum class NonlinearityKind { PowerU, PowerUt };

struct Nonlinearity {
    NonlinearityKind kind = NonlinearityKind::PowerU;
    double p = 2.0;

    Nonlinearity() = default;
    Nonlinearity(NonlinearityKind k, double power) : kind(k), p(power) {
        if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("nonlinearity: p must exceed 1");
    }
};

inline const char* to_string(NonlinearityKind k) { return k == NonlinearityKind::PowerU ? "power_u" : "power_ut"; }

// Pads the coefficient array of an N^n grid to (3N/2)^n. Nyquist modes are dropped.
inline SpectralField::Coeffs pad_coefficients(const Grid& g, const SpectralField::Coeffs& c, int M) {
    const int N = g.points_per_axis(), n = g.n();
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(M);
    SpectralField::Coeffs out(total);
    for (std::size_t f = 0; f < c.size(); ++f) {
        std::size_t rest = f, target = 0, stride = 1;
        bool skip = false;
        for (int d = 0; d < n; ++d) {
            const int i = static_cast<int>(rest % N);
            rest /= N;
            if (i == N / 2) {
                skip = true;
                break;
            }
            const int k = g.wave_index(i);
            target += static_cast<std::size_t>(k >= 0 ? k : k + M) * stride;
            stride *= static_cast<std::size_t>(M);
        }
        if (!skip) out[target] = c[f];
    }
    return out;
}

inline SpectralField::Coeffs truncate_coefficients(const Grid& g, const SpectralField::Coeffs& big, int M) {
    const int N = g.points_per_axis(), n = g.n();
    SpectralField::Coeffs out(g.size());
    for (std::size_t f = 0; f < out.size(); ++f) {
        std::size_t rest = f, source = 0, stride = 1;
        bool skip = false;
        for (int d = 0; d < n; ++d) {
            const int i = static_cast<int>(rest % N);
            rest /= N;
            if (i == N / 2) {
                skip = true;
                break;
            }
            const int k = g.wave_index(i);
            source += static_cast<std::size_t>(k >= 0 ? k : k + M) * stride;
            stride *= static_cast<std::size_t>(M);
        }
        if (!skip) out[f] = big[source];
    }
    return out;
}

// Coefficients of |w|^p on the grid of w, dealiased by 3/2 zero padding.
inline SpectralField::Coeffs dealiased_power(const SpectralField& w, double p) {
    const Grid& g = w.grid();
    const int M = 3 * g.points_per_axis() / 2;
    const std::vector<int> dims(static_cast<std::size_t>(g.n()), M);
    SpectralField::Coeffs padded = pad_coefficients(g, w.coefficients(), M), vals, spec;
    fft_backward(dims, padded, vals);
    const int ip = p == std::floor(p) && p <= 4.0 ? static_cast<int>(p) : 0;
    for (auto& z : vals) {
        const double v = std::abs(z.real());
        switch (ip) {
        case 2: z = v * v; break;
        case 3: z = v * v * v; break;
        case 4: z = (v * v) * (v * v); break;
        default: z = std::pow(v, p);
        }
    }
    fft_forward(dims, vals, spec);
    const double inv = 1.0 / static_cast<double>(vals.size());
    for (auto& z : spec) z *= inv;
    return truncate_coefficients(g, spec, M);
}

inline SpectralField::Coeffs evaluate_nonlinearity(const Nonlinearity& nl, const SpectralField& u,
                                                   const SpectralField& ut) {
    return dealiased_power(nl.kind == NonlinearityKind::PowerU ? u : ut, nl.p);
}

// Per-mode multipliers for one step size on one grid.
struct StepMultipliers {
    double dt = 0.0;
    std::vector<KernelSample> k;

    StepMultipliers() = default;
    StepMultipliers(const ModelParams& p, const Grid& g, double step) : dt(step) {
        const auto& xi = g.xi_abs();
        k.reserve(xi.size());
        for (double x : xi) k.push_back(kernel_sample(symbol_powers(p, x), step));
    }
};

struct StepResult {
    StatePair state;
    double discrepancy = 0.0; // corrector-predictor gap in u_t, relative
    bool finite = true;
};

namespace detail {
inline double coeff_norm(const SpectralField::Coeffs& c) {
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    return std::sqrt(s);
}
inline bool all_finite(const SpectralField::Coeffs& c) {
    for (const auto& z : c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}
} // namespace detail

// One exponential step with trapezoidal Duhamel term. `source(u, ut, t)`
// returns the coefficients of the right-hand side on the state grid.
// `table`, when given, must hold the multipliers for exactly this dt and grid.
template <class Source>
StepResult duhamel_step_with(const ModelParams& p, const StatePair& s, Source&& source, double dt,
                             const StepMultipliers* table = nullptr) {
    detail::require_unit_mu(p);
    if (!(dt > 0.0)) throw std::invalid_argument("semilinear: dt must be positive");
    const Grid& g = s.u.grid();
    StepMultipliers local;
    if (!table || table->dt != dt || table->k.size() != g.size()) {
        local = StepMultipliers(p, g, dt);
        table = &local;
    }
    const auto& c0 = s.u.coefficients();
    const auto& c1 = s.ut.coefficients();
    const SpectralField::Coeffs f0 = source(s.u, s.ut, s.t);

    SpectralField::Coeffs u(c0.size()), ut_lin(c0.size()), ut_pred(c0.size()), dk1(c0.size());
    const double h = 0.5 * dt;
    for (std::size_t i = 0; i < c0.size(); ++i) {
        const KernelSample& k = table->k[i];
        u[i] = k.k0 * c0[i] + k.k1 * c1[i] + h * k.k1 * f0[i];
        ut_lin[i] = k.dt_k0 * c0[i] + k.dt_k1 * c1[i] + h * k.dt_k1 * f0[i];
        ut_pred[i] = ut_lin[i] + h * f0[i];
    }
    StepResult out{StatePair{SpectralField::zeros(g), SpectralField::zeros(g), s.t + dt}, 0.0, true};
    if (!detail::all_finite(u) || !detail::all_finite(ut_pred)) {
        out.finite = false;
        return out;
    }
    SpectralField u_new = SpectralField::from_coefficients(g, std::move(u));
    SpectralField ut_p = SpectralField::from_coefficients(g, ut_pred);
    const SpectralField::Coeffs f1 = source(u_new, ut_p, s.t + dt);
    SpectralField::Coeffs ut(c0.size()), gap(c0.size());
    for (std::size_t i = 0; i < c0.size(); ++i) {
        ut[i] = ut_lin[i] + h * f1[i];
        gap[i] = ut[i] - ut_pred[i];
    }
    if (!detail::all_finite(ut)) {
        out.finite = false;
        return out;
    }
    const double scale = detail::coeff_norm(ut);
    const double diff = detail::coeff_norm(gap);
    out.discrepancy = scale > 0.0 ? diff / scale : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    out.state = StatePair{std::move(u_new), SpectralField::from_coefficients(g, std::move(ut)), s.t + dt};
    return out;
}

inline StepResult duhamel_step(const ModelParams& p, const StatePair& s, const Nonlinearity& nl, double dt,
                               const StepMultipliers* table = nullptr) {
    return duhamel_step_with(
        p, s, [&nl](const SpectralField& u, const SpectralField& ut, double) { return evaluate_nonlinearity(nl, u, ut); },
        dt, table);
}

// Channel order used by weights and reports.
enum Channel { kU = 0, kDsigmaU = 1, kDsU = 2, kUt = 3, kDsUt = 4, kChannelCount = 5 };

inline const char* channel_name(int c) {
    static const char* names[] = {"u", "D^sigma u", "D^s u", "u_t", "D^(s-2delta) u_t"};
    return names[c];
}

// Exponents of the weights f1, f_sigma, f_{2,s}, f3, f_{4,s}, and which of
// them take part in the solution norm for a given theorem. A weight that the
// existence proof sets to zero means the channel is left out of the norm.
struct WeightSet {
    std::array<double, kChannelCount> exponent{};
    std::array<bool, kChannelCount> active{};

    WeightSet() = default;
    WeightSet(const ModelParams& p, double inv_r, double s, Theorem th) {
        const auto r = numeric_rates(p, inv_r);
        exponent[kU] = r.u_from_u1(0.0);
        exponent[kDsigmaU] = r.u_from_u1(p.sigma());
        exponent[kDsU] = r.u_from_u1(s);
        exponent[kUt] = r.ut_from_u1(0.0);
        exponent[kDsUt] = r.ut_from_u1(s - 2.0 * p.delta());
        active.fill(true);
        switch (th) {
        case Theorem::T2_1: active[kDsUt] = false; break;
        case Theorem::T2_2: active[kDsigmaU] = active[kUt] = active[kDsUt] = false; break;
        default: active[kDsigmaU] = false; break;
        }
    }

    double weight(int c, double tau) const { return std::pow(1.0 + tau, exponent[c]); }
};

// Running supremum of sum_c f_c(tau)^{-1} norm_c(tau).
class XNormTracker {
public:
    explicit XNormTracker(WeightSet w) : w_(w) {}

    double update(double tau, const std::array<double, kChannelCount>& norms) {
        double sum = 0.0;
        for (int c = 0; c < kChannelCount; ++c)
            if (w_.active[c]) sum += norms[c] / w_.weight(c, tau);
        sup_ = std::max(sup_, sum);
        return sup_;
    }
    double value() const { return sup_; }

private:
    WeightSet w_;
    double sup_ = 0.0;
};

inline double weighted_X_norm(const WeightSet& w, const std::vector<double>& taus,
                              const std::vector<std::array<double, kChannelCount>>& norms) {
    XNormTracker tr(w);
    for (std::size_t i = 0; i < taus.size(); ++i) tr.update(taus[i], norms[i]);
    return tr.value();
}

inline std::array<double, kChannelCount> channel_norms(const StatePair& st, const ModelParams& p, double q,
                                                       double s) {
    std::array<double, kChannelCount> v{};
    v[kU] = lq_norm(st.u, q);
    v[kDsigmaU] = lq_norm(fractional_derivative(st.u, p.sigma()), q);
    v[kDsU] = lq_norm(fractional_derivative(st.u, s), q);
    v[kUt] = lq_norm(st.ut, q);
    v[kDsUt] = lq_norm(fractional_derivative(st.ut, positive_part(s - 2.0 * p.delta())), q);
    return v;
}

// Grid surrogate of the data norm on A^s_{m,q}.
inline double data_norm(const StatePair& d, const ModelParams& p, double q, double m, double s) {
    return lq_norm(d.u, m) + lq_norm(d.u, q) + lq_norm(fractional_derivative(d.u, s), q) + lq_norm(d.ut, m) +
           lq_norm(d.ut, q) + lq_norm(fractional_derivative(d.ut, positive_part(s - 2.0 * p.delta())), q);
}

struct RunOptions {
    double dt_max = 0.5;
    double dt_min = 1e-6;
    double tol = 1e-6;
    double blowup_threshold = 1e12;
    double record_every = 1.0;
};

struct RunReport {
    std::vector<double> times;
    std::array<std::vector<double>, kChannelCount> channels;
    std::vector<double> x_norm;
    std::vector<double> step_size;
    bool blow_up = false;
    double blow_up_time = 0.0;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    WeightSet weights;
};

inline RunReport run(const ModelParams& p, const StatePair& data, const Nonlinearity& nl, const NormSetup& setup,
                     double s, double horizon, Theorem th, const RunOptions& opt = {}) {
    if (!(horizon > data.t)) throw std::invalid_argument("semilinear: horizon must exceed the initial time");
    if (!(opt.dt_max > 0.0) || opt.dt_max > 0.5) throw std::invalid_argument("semilinear: dt cap must lie in (0, 0.5]");
    const double q = setup.q().to_double();
    RunReport rep;
    rep.weights = WeightSet(p, setup.inv_r().to_double(), s, th);
    XNormTracker tracker(rep.weights);

    auto record = [&](const StatePair& st, double dt) {
        const auto v = channel_norms(st, p, q, s);
        rep.times.push_back(st.t);
        for (int c = 0; c < kChannelCount; ++c) rep.channels[c].push_back(v[c]);
        rep.x_norm.push_back(tracker.update(st.t, v));
        rep.step_size.push_back(dt);
        for (double x : v)
            if (!std::isfinite(x) || x > opt.blowup_threshold) return false;
        return true;
    };

    // dt mostly cycles through dt_max / 2^k, so a few tables cover a run
    std::vector<StepMultipliers> tables;
    auto table_for = [&](double h) -> const StepMultipliers& {
        for (const auto& t : tables)
            if (t.dt == h) return t;
        if (tables.size() >= 8) tables.erase(tables.begin());
        tables.emplace_back(p, data.u.grid(), h);
        return tables.back();
    };

    StatePair st = data;
    double dt = opt.dt_max;
    if (!record(st, 0.0)) {
        rep.blow_up = true;
        rep.blow_up_time = st.t;
        return rep;
    }
    double next_out = st.t + opt.record_every;
    while (st.t < horizon - 1e-12) {
        const double target = std::min(next_out, horizon);
        const double h = std::min(dt, target - st.t);
        StepResult r = duhamel_step(p, st, nl, h, &table_for(h));
        if (!r.finite) {
            rep.blow_up = true;
            rep.blow_up_time = st.t + h;
            return rep;
        }
        if (r.discrepancy > opt.tol && h > opt.dt_min) {
            dt = std::max(0.5 * h, opt.dt_min);
            ++rep.rejected;
            continue;
        }
        st = std::move(r.state);
        ++rep.steps;
        if (!(std::max(st.u.max_abs(), st.ut.max_abs()) <= opt.blowup_threshold)) {
            record(st, h);
            rep.blow_up = true;
            rep.blow_up_time = st.t;
            return rep;
        }
        if (r.discrepancy < 0.125 * opt.tol) dt = std::min(2.0 * dt, opt.dt_max);
        if (std::abs(st.t - target) < 1e-12) {
            st.t = target;
            if (!record(st, h)) {
                rep.blow_up = true;
                rep.blow_up_time = st.t;
                return rep;
            }
            next_out = target + opt.record_every;
        }
    }
    return rep;
}

} // namespace sevo
