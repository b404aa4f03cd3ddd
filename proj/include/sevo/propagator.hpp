#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sevo/cutoff.hpp"
#include "sevo/fft.hpp"
#include "sevo/model.hpp"
#include "sevo/symbols.hpp"

namespace sevo {

// Periodic grid [0, L)^n with N points per axis.
class Grid {
public:
    static constexpr double kDefaultBox = 80.0;

    Grid(int n, int points_per_axis, double box_length = kDefaultBox)
        : n_(n), N_(points_per_axis), L_(box_length) {
        if (n < 1 || n > 3) throw std::invalid_argument("grid: dimension must be 1, 2 or 3");
        if (N_ < 2 || (N_ & (N_ - 1)) != 0) throw std::invalid_argument("grid: points per axis must be a power of two");
        if (!(L_ > 0.0) || !std::isfinite(L_)) throw std::invalid_argument("grid: box length must be positive");
        size_ = 1;
        for (int i = 0; i < n_; ++i) size_ *= static_cast<std::size_t>(N_);
        auto v = std::make_shared<std::vector<double>>(size_);
        for (std::size_t f = 0; f < size_; ++f) {
            std::size_t rest = f;
            double s = 0.0;
            for (int d = 0; d < n_; ++d) {
                const double k = wave_number(static_cast<int>(rest % N_));
                rest /= N_;
                s += k * k;
            }
            (*v)[f] = std::sqrt(s);
        }
        xi_ = std::move(v);
    }

    static Grid default_for(int n, double box_length = kDefaultBox) {
        const int pts = n == 1 ? (1 << 14) : (n == 2 ? 512 : 128);
        return Grid(n, pts, box_length);
    }

    int n() const { return n_; }
    int points_per_axis() const { return N_; }
    double box_length() const { return L_; }
    std::size_t size() const { return size_; }
    double spacing() const { return L_ / N_; }
    double cell_volume() const { return std::pow(spacing(), n_); }
    std::vector<int> dims() const { return std::vector<int>(static_cast<std::size_t>(n_), N_); }

    // signed integer wave number for axis index i in [0, N)
    int wave_index(int i) const { return i < N_ / 2 ? i : i - N_; }
    double wave_number(int i) const { return 2.0 * std::numbers::pi * wave_index(i) / L_; }

    // |xi| for every flat coefficient index
    const std::vector<double>& xi_abs() const { return *xi_; }

    // true for coefficients on a Nyquist plane of any axis
    bool is_nyquist(std::size_t f) const {
        for (int d = 0; d < n_; ++d) {
            if (static_cast<int>(f % N_) == N_ / 2) return true;
            f /= N_;
        }
        return false;
    }

    // physical coordinate of a grid point along each axis
    double coordinate(int i) const { return spacing() * i; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_ == b.n_ && a.N_ == b.N_ && a.L_ == b.L_;
    }

private:
    int n_, N_;
    double L_;
    std::size_t size_;
    std::shared_ptr<const std::vector<double>> xi_;
};

// Real grid function with its Fourier-series coefficients
// u(x) = sum_k c_k exp(i xi_k . x).
class SpectralField {
public:
    using Coeffs = std::vector<std::complex<double>>;

    static SpectralField from_values(const Grid& g, std::vector<double> values) {
        if (values.size() != g.size()) throw std::invalid_argument("field: value count does not match grid");
        Coeffs tmp(values.begin(), values.end()), c;
        fft_forward(g.dims(), tmp, c);
        const double inv = 1.0 / static_cast<double>(g.size());
        for (auto& z : c) z *= inv;
        return SpectralField(g, std::move(values), std::move(c), 0.0);
    }

    static SpectralField from_coefficients(const Grid& g, Coeffs coeffs) {
        if (coeffs.size() != g.size()) throw std::invalid_argument("field: coefficient count does not match grid");
        Coeffs tmp;
        fft_backward(g.dims(), coeffs, tmp);
        std::vector<double> v(tmp.size());
        double max_im = 0.0;
        for (std::size_t i = 0; i < tmp.size(); ++i) {
            v[i] = tmp[i].real();
            max_im = std::max(max_im, std::abs(tmp[i].imag()));
        }
        return SpectralField(g, std::move(v), std::move(coeffs), max_im);
    }

    static SpectralField zeros(const Grid& g) {
        return SpectralField(g, std::vector<double>(g.size(), 0.0), Coeffs(g.size()), 0.0);
    }

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const Coeffs& coefficients() const { return coeffs_; }
    // largest imaginary part discarded when values were synthesized
    double max_imag() const { return max_imag_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    SpectralField operator+(const SpectralField& o) const {
        require_same_grid(o);
        Coeffs c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
        return SpectralField(grid_, std::move(v), std::move(c), std::max(max_imag_, o.max_imag_));
    }

    SpectralField scaled(double s) const {
        Coeffs c(coeffs_);
        for (auto& z : c) z *= s;
        std::vector<double> v(values_);
        for (auto& x : v) x *= s;
        return SpectralField(grid_, std::move(v), std::move(c), max_imag_ * std::abs(s));
    }

    void require_same_grid(const SpectralField& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("field: grid mismatch");
    }

private:
    SpectralField(const Grid& g, std::vector<double> v, Coeffs c, double max_im)
        : grid_(g), values_(std::move(v)), coeffs_(std::move(c)), max_imag_(max_im) {}

    Grid grid_;
    std::vector<double> values_;
    Coeffs coeffs_;
    double max_imag_ = 0.0;
};

struct StatePair {
    SpectralField u;
    SpectralField ut;
    double t = 0.0;
};

inline StatePair make_state(SpectralField u, SpectralField ut, double t = 0.0) {
    u.require_same_grid(ut);
    if (t < 0.0) throw std::invalid_argument("state: t must be nonnegative");
    return StatePair{std::move(u), std::move(ut), t};
}

// Multiplier application over dt to coefficient arrays.
inline void apply_propagator(const ModelParams& p, const Grid& g, double dt, const SpectralField::Coeffs& c0,
                             const SpectralField::Coeffs& c1, SpectralField::Coeffs& u, SpectralField::Coeffs& ut) {
    const auto& xi = g.xi_abs();
    u.resize(c0.size());
    ut.resize(c0.size());
    for (std::size_t i = 0; i < c0.size(); ++i) {
        const KernelSample s = kernel_sample(symbol_powers(p, xi[i]), dt);
        u[i] = s.k0 * c0[i] + s.k1 * c1[i];
        ut[i] = s.dt_k0 * c0[i] + s.dt_k1 * c1[i];
    }
}

inline StatePair evolve_linear(const ModelParams& p, const StatePair& data, double t_target) {
    detail::require_unit_mu(p);
    data.u.require_same_grid(data.ut);
    if (t_target < data.t) throw std::invalid_argument("propagator: t_target precedes the state time");
    if (t_target == data.t) return data;
    SpectralField::Coeffs u, ut;
    apply_propagator(p, data.u.grid(), t_target - data.t, data.u.coefficients(), data.ut.coefficients(), u, ut);
    return StatePair{SpectralField::from_coefficients(data.u.grid(), std::move(u)),
                     SpectralField::from_coefficients(data.u.grid(), std::move(ut)), t_target};
}

inline SpectralField fractional_derivative(const SpectralField& f, double a) {
    if (!(a >= 0.0)) throw std::invalid_argument("propagator: derivative order must be >= 0");
    if (a == 0.0) return f;
    const auto& xi = f.grid().xi_abs();
    SpectralField::Coeffs c(f.coefficients());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= xi[i] == 0.0 ? 0.0 : std::pow(xi[i], a);
    return SpectralField::from_coefficients(f.grid(), std::move(c));
}

// (low, high) = (chi(|D|) f, (1 - chi(|D|)) f)
inline std::pair<SpectralField, SpectralField> split_frequencies(const SpectralField& f) {
    const auto& xi = f.grid().xi_abs();
    SpectralField::Coeffs lo(f.coefficients()), hi(f.coefficients());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double w = cutoff_chi(xi[i]);
        lo[i] *= w;
        hi[i] = f.coefficients()[i] - lo[i];
    }
    return {SpectralField::from_coefficients(f.grid(), std::move(lo)),
            SpectralField::from_coefficients(f.grid(), std::move(hi))};
}

inline double lq_norm(const SpectralField& f, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("propagator: q must lie in [1, inf]");
    if (std::isinf(q)) return f.max_abs();
    double s = 0.0;
    if (q == 2.0) {
        for (double v : f.values()) s += v * v;
        return std::sqrt(s * f.grid().cell_volume());
    }
    for (double v : f.values()) s += std::pow(std::abs(v), q);
    return std::pow(s * f.grid().cell_volume(), 1.0 / q);
}

// L2 norm from the coefficients (Parseval on the torus).
inline double l2_norm_spectral(const SpectralField& f) {
    double s = 0.0;
    for (const auto& z : f.coefficients()) s += std::norm(z);
    return std::sqrt(s * std::pow(f.grid().box_length(), f.grid().n()));
}

// amplitude * exp(-|x - c|^2 / (2 w^2)) with c the box centre
inline SpectralField gaussian_field(const Grid& g, double amplitude = 1.0, double width = 1.0) {
    std::vector<double> v(g.size());
    const double c = 0.5 * g.box_length();
    const int N = g.points_per_axis();
    for (std::size_t f = 0; f < g.size(); ++f) {
        std::size_t rest = f;
        double r2 = 0.0;
        for (int d = 0; d < g.n(); ++d) {
            const double x = g.coordinate(static_cast<int>(rest % N)) - c;
            rest /= N;
            r2 += x * x;
        }
        v[f] = amplitude * std::exp(-0.5 * r2 / (width * width));
    }
    return SpectralField::from_values(g, std::move(v));
}

// Radius about the box centre holding `fraction` of the L2 mass.
inline double spread_radius(const SpectralField& f, double fraction = 0.99) {
    const Grid& g = f.grid();
    const double c = 0.5 * g.box_length();
    const int N = g.points_per_axis();
    std::vector<std::pair<double, double>> rm;
    rm.reserve(g.size());
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rest = i;
        double r2 = 0.0;
        for (int d = 0; d < g.n(); ++d) {
            const double x = g.coordinate(static_cast<int>(rest % N)) - c;
            rest /= N;
            r2 += x * x;
        }
        const double m = f.values()[i] * f.values()[i];
        rm.emplace_back(r2, m);
        total += m;
    }
    if (total == 0.0) return 0.0;
    std::sort(rm.begin(), rm.end());
    double acc = 0.0;
    for (const auto& [r2, m] : rm) {
        acc += m;
        if (acc >= fraction * total) return std::sqrt(r2);
    }
    return std::sqrt(rm.back().first);
}

} // namespace sevo
