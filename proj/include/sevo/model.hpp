#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "sevo/rational.hpp"

namespace sevo {

enum class Regime { Structural, ViscoElastic };

inline const char* to_string(Regime r) { return r == Regime::Structural ? "structural" : "visco-elastic"; }

// Global existence theorems, indexed by the regularity range of the data.
enum class Theorem { T2_1, T2_2, T2_3, T2_4, T2_5 };

inline const char* to_string(Theorem t) {
    switch (t) {
    case Theorem::T2_1: return "T2_1";
    case Theorem::T2_2: return "T2_2";
    case Theorem::T2_3: return "T2_3";
    case Theorem::T2_4: return "T2_4";
    default: return "T2_5";
    }
}

inline Theorem theorem_from_string(const std::string& s) {
    for (Theorem t : {Theorem::T2_1, Theorem::T2_2, Theorem::T2_3, Theorem::T2_4, Theorem::T2_5})
        if (s == to_string(t)) return t;
    throw std::invalid_argument("unknown theorem '" + s + "'");
}

// (sigma, delta, mu, n) for u_tt + (-Lap)^sigma u + mu (-Lap)^delta u_t = f.
// Numeric construction keeps doubles only; exact construction also keeps
// the rationals so that theorem conditions can be evaluated exactly.
class ModelParams {
public:
    static constexpr double kEqualTol = 1e-12;

    ModelParams(double sigma, double delta, int n, double mu = 1.0)
        : sigma_(sigma), delta_(delta), mu_(mu), n_(n) {
        validate();
        if (std::abs(delta_ - sigma_) <= kEqualTol * sigma_) delta_ = sigma_;
    }

    static ModelParams exact(Rational sigma, Rational delta, int n, Rational mu = Rational(1)) {
        ModelParams p(sigma.to_double(), delta.to_double(), n, mu.to_double());
        if (sigma < Rational(1)) throw std::invalid_argument("model: sigma must be >= 1");
        if (!(delta * Rational(2) > sigma) || delta > sigma)
            throw std::invalid_argument("model: delta must lie in (sigma/2, sigma]");
        if (mu.sign() <= 0) throw std::invalid_argument("model: mu must be positive");
        p.sigma_q_ = sigma;
        p.delta_q_ = delta;
        p.mu_q_ = mu;
        p.delta_ = (delta == sigma) ? p.sigma_ : delta.to_double();
        return p;
    }

    double sigma() const { return sigma_; }
    double delta() const { return delta_; }
    double mu() const { return mu_; }
    int n() const { return n_; }

    bool is_exact() const { return sigma_q_.has_value(); }
    const Rational& sigma_q() const { return require(sigma_q_); }
    const Rational& delta_q() const { return require(delta_q_); }
    const Rational& mu_q() const { return require(mu_q_); }

    Regime regime() const {
        if (is_exact()) return *delta_q_ == *sigma_q_ ? Regime::ViscoElastic : Regime::Structural;
        return delta_ == sigma_ ? Regime::ViscoElastic : Regime::Structural;
    }

private:
    double sigma_, delta_, mu_;
    int n_;
    std::optional<Rational> sigma_q_, delta_q_, mu_q_;

    void validate() const {
        if (!std::isfinite(sigma_) || !std::isfinite(delta_) || !std::isfinite(mu_))
            throw std::invalid_argument("model: non-finite parameter");
        if (sigma_ < 1.0) throw std::invalid_argument("model: sigma must be >= 1");
        if (!(delta_ > 0.5 * sigma_) || delta_ > sigma_ * (1.0 + kEqualTol))
            throw std::invalid_argument("model: delta must lie in (sigma/2, sigma]");
        if (!(mu_ > 0.0)) throw std::invalid_argument("model: mu must be positive");
        if (n_ < 1) throw std::invalid_argument("model: n must be >= 1");
    }

    static const Rational& require(const std::optional<Rational>& v) {
        if (!v) throw std::logic_error("model: exact arithmetic required but parameters are floating point");
        return *v;
    }
};

// Norm pairing (q, m) with 1 + 1/q = 1/r + 1/m.
class NormSetup {
public:
    NormSetup(Rational q, Rational m) : q_(q), m_(m) {
        if (!(q > Rational(1))) throw std::invalid_argument("norm setup: q must exceed 1");
        if (m < Rational(1)) throw std::invalid_argument("norm setup: m must be >= 1");
        if (!(m < q)) throw std::invalid_argument("norm setup: m must be strictly less than q");
        inv_r_ = Rational(1) + q.inverse() - m.inverse();
    }

    const Rational& q() const { return q_; }
    const Rational& m() const { return m_; }
    const Rational& inv_r() const { return inv_r_; }
    Rational r() const { return inv_r_.inverse(); }

private:
    Rational q_, m_, inv_r_;
};

inline double positive_part(double s) { return s > 0.0 ? s : 0.0; }
inline Rational positive_part(const Rational& s) { return s.sign() > 0 ? s : Rational(0); }

inline std::int64_t ceil_min_int(double s) { return static_cast<std::int64_t>(std::ceil(s)); }
inline std::int64_t ceil_min_int(const Rational& s) { return s.ceil(); }

inline Rational kappa1(const ModelParams& p, const NormSetup& ns) {
    const Rational a = Rational(1) - p.sigma_q() / (Rational(2) * p.delta_q());
    return Rational(1) + Rational(1 + p.n() / 2) * a * ns.inv_r();
}

inline Rational kappa2(const ModelParams& p, const NormSetup& ns) {
    const Rational a = Rational(1) - p.sigma_q() / (Rational(2) * p.delta_q());
    return Rational(2 + p.n() / 2) * a * ns.inv_r();
}

// Large-time exponents of the combined (L^m cap L^q)-L^q estimates. T is
// double or Rational; inv_r = 1/r (inv_r = 1 gives the L^q-L^q case).
template <class T>
struct CombinedRates {
    T sigma, delta, inv_r;
    int n;

    T damp() const { return T(1) - sigma / (T(2) * delta); }
    T spread() const { return T(n) / (T(2) * delta) * (T(1) - inv_r); }
    T half_n() const { return T(n / 2); }

    // ||D|^a u|, data u0 only.
    T u_from_u0(const T& a) const {
        return (T(2) + half_n()) * damp() * inv_r - spread() - a / (T(2) * delta);
    }
    // ||D|^a u|, data u1 only.
    T u_from_u1(const T& a) const {
        return T(1) + (T(1) + half_n()) * damp() * inv_r - spread() - a / (T(2) * delta);
    }
    // ||D|^a u_t|, data u0 only.
    T ut_from_u0(const T& a) const {
        return (T(1) + half_n()) * damp() * inv_r - spread() - (a + T(2) * (sigma - delta)) / (T(2) * delta);
    }
    // ||D|^a u_t|, data u1 only.
    T ut_from_u1(const T& a) const {
        return (T(2) + half_n()) * damp() * inv_r - spread() - a / (T(2) * delta);
    }
};

inline CombinedRates<Rational> exact_rates(const ModelParams& p, const Rational& inv_r) {
    return {p.sigma_q(), p.delta_q(), inv_r, p.n()};
}

inline CombinedRates<double> numeric_rates(const ModelParams& p, double inv_r) {
    return {p.sigma(), p.delta(), inv_r, p.n()};
}

} // namespace sevo
