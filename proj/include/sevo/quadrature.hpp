#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sevo::quad {

// 8-point Gauss-Legendre on [-1, 1], positive half.
inline constexpr std::array<double, 4> kGl8X = {0.1834346424956498, 0.5255324099163290,
                                                0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> kGl8W = {0.3626837833783620, 0.3137066458778873,
                                                0.2223810344533745, 0.1012285362903763};

// Appends the 8 nodes/weights of [a, b] to the output arrays.
inline void gl8_panel(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < 4; ++i) {
        x.push_back(c - h * kGl8X[i]);
        w.push_back(h * kGl8W[i]);
        x.push_back(c + h * kGl8X[i]);
        w.push_back(h * kGl8W[i]);
    }
}

// Integral of |f| from uniform samples f[0..N-1] with spacing h. Each cell
// uses the local cubic through four neighbours; cells where that cubic
// changes sign are split at its root so the kink of |f| is resolved.
inline double integrate_abs_uniform(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n < 4) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) s += 0.5 * h * (std::abs(f[i]) + std::abs(f[i + 1]));
        return s;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // stencil start so that cell [i, i+1] lies inside j..j+3
        std::size_t j = i == 0 ? 0 : (i + 2 >= n ? n - 4 : i - 1);
        const double y0 = f[j], y1 = f[j + 1], y2 = f[j + 2], y3 = f[j + 3];
        // cubic in local coordinate u (node k at u = k), cell is [i-j, i-j+1]
        auto p = [&](double u) {
            const double a0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
            const double a1 = u * (u - 2) * (u - 3) / 2.0;
            const double a2 = -u * (u - 1) * (u - 3) / 2.0;
            const double a3 = u * (u - 1) * (u - 2) / 6.0;
            return a0 * y0 + a1 * y1 + a2 * y2 + a3 * y3;
        };
        const double u0 = static_cast<double>(i - j), u1 = u0 + 1.0;
        // split points: roots of p inside the cell, found by sampling + bisection
        double cuts[8];
        int nc = 0;
        cuts[nc++] = u0;
        constexpr int kSub = 4;
        double prev_u = u0, prev_v = p(u0);
        for (int k = 1; k <= kSub; ++k) {
            const double uu = u0 + static_cast<double>(k) / kSub;
            const double vv = p(uu);
            if ((prev_v < 0.0) != (vv < 0.0) && prev_v != 0.0 && vv != 0.0) {
                double lo = prev_u, hi = uu, flo = prev_v;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = p(mid);
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                cuts[nc++] = 0.5 * (lo + hi);
            }
            prev_u = uu;
            prev_v = vv;
        }
        cuts[nc++] = u1;
        // 2-point Gauss is exact for the cubic on each sign-definite piece
        constexpr double g = 0.5773502691896258;
        for (int k = 0; k + 1 < nc; ++k) {
            const double a = cuts[k], b = cuts[k + 1];
            const double c = 0.5 * (a + b), hh = 0.5 * (b - a);
            total += hh * std::abs(p(c - hh * g) + p(c + hh * g));
        }
    }
    return total * h;
}

} // namespace sevo::quad
