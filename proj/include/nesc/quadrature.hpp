// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "nesc/chebyshev.hpp"
#include "nesc/errors.hpp"

namespace nesc {

/// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n) : nodes(n), weights(n) {
        for (std::size_t i = 0; i < n; ++i) {
            // Tricomi initial guess
            double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    /// Integrate f over [a, b].
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(mid + half * nodes[i]);
        return half * s;
    }
};

namespace detail {
template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

/// Adaptive Simpson integration. Tolerant of integrable endpoint/interior
/// log singularities if the caller splits the interval at them.
template <class F>
double adaptive_simpson(F f, double a, double b, double tol = 1e-12, int depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Integral over the unit disk, f given in Cartesian coordinates.
/// Gauss-Legendre in radius, uniform trapezoid in angle (spectrally accurate
/// for the periodic direction).
template <class F>
double disk_integral(F&& f, std::size_t n_radial = 64, std::size_t n_angular = 128) {
    GaussLegendre gl(n_radial);
    double total = 0.0;
    const double dth = 2.0 * pi / static_cast<double>(n_angular);
    for (std::size_t j = 0; j < n_angular; ++j) {
        const double th = dth * static_cast<double>(j);
        const double c = std::cos(th), s = std::sin(th);
        auto radial = [&](double r) { return r * f(r * c, r * s); };
        total += gl.integrate(radial, 0.0, 1.0) * dth;
    }
    return total;
}

/// Same disk integral with refinement until two successive levels agree.
/// Throws QuadratureFailure if the requested tolerance is not reached.
template <class F>
double disk_integral_adaptive(F&& f, double tol = 1e-8) {
    double prev = disk_integral(f, 24, 48);
    for (std::size_t n = 48; n <= 384; n *= 2) {
        double cur = disk_integral(f, n, 2 * n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureFailure("disk integral did not converge to requested tolerance");
}

} // namespace nesc
