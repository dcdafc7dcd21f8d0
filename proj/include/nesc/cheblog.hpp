// SPDX-License-Identifier: Apache-2.0
#pragma once

// Weighted Chebyshev function spaces and the interval log-kernel operator.
//
// Densities live in the weighted space X1: phi(t) = sum_n c_n T_n(t)/sqrt(1-t^2),
// the natural space for flux densities through a small arc (inverse square-root
// endpoint blowup). Smooth boundary data lives in Y1 as plain Chebyshev series.
//
// The log-kernel operator L[phi](x) = int_{-1}^{1} ln|x-y| phi(y) dy is diagonal
// in this pair of bases:
//     L[T_0-mode] = -pi ln 2,      L[T_n-mode] = -(pi/n) T_n   (n >= 1),
// which makes both L and its Carleman inverse exact per mode. The integral
// form of the inverse (finite Hilbert transform plus the a(psi) term) is kept
// in tests as an independent oracle path.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "nesc/chebyshev.hpp"
#include "nesc/errors.hpp"

namespace nesc {

/// Element of X1: coefficients against the weighted basis T_n(t)/sqrt(1-t^2).
struct ChebyshevDensity {
    std::vector<double> coeffs;

    ChebyshevDensity() = default;
    explicit ChebyshevDensity(std::vector<double> c) : coeffs(std::move(c)) {}

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    /// Pointwise value on (-1, 1).
    double operator()(double t) const {
        return cheb_eval(coeffs, t) / std::sqrt(1.0 - t * t);
    }

    /// Smooth factor p(t) with phi(t) = p(t)/sqrt(1-t^2).
    double smooth_part(double t) const { return cheb_eval(coeffs, t); }

    /// ||phi||^2_{X1} = pi c_0^2 + (pi/2) sum_{n>=1} c_n^2.
    double norm_sq() const {
        double s = 0.0;
        for (std::size_t n = 1; n < coeffs.size(); ++n) s += coeffs[n] * coeffs[n];
        double c0 = coeffs.empty() ? 0.0 : coeffs[0];
        return pi * c0 * c0 + 0.5 * pi * s;
    }
};

/// Element of Y1: continuous boundary data as a Chebyshev series.
struct SmoothBoundaryData {
    std::vector<double> coeffs;

    SmoothBoundaryData() = default;
    explicit SmoothBoundaryData(std::vector<double> c) : coeffs(std::move(c)) {}

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    double operator()(double x) const { return cheb_eval(coeffs, x); }
};

/// mass(phi) = int_{-1}^{1} phi = pi c_0; only the n = 0 mode carries mass.
inline double mass(const ChebyshevDensity& phi) {
    return phi.coeffs.empty() ? 0.0 : pi * phi.coeffs[0];
}

/// L[phi](x) = int ln|x-y| phi(y) dy via the exact mode identities.
inline SmoothBoundaryData apply_log_kernel(const ChebyshevDensity& phi) {
    std::vector<double> b(phi.coeffs.size(), 0.0);
    if (!b.empty()) b[0] = -pi * std::log(2.0) * phi.coeffs[0];
    for (std::size_t n = 1; n < b.size(); ++n)
        b[n] = -(pi / static_cast<double>(n)) * phi.coeffs[n];
    return SmoothBoundaryData(std::move(b));
}

/// Carleman inverse L^{-1}[psi], exact per mode:
///   b_0 -> -b_0 / (pi ln 2),   b_n -> -(n/pi) b_n.
inline ChebyshevDensity invert_log_kernel(const SmoothBoundaryData& psi) {
    std::vector<double> c(psi.coeffs.size(), 0.0);
    if (!c.empty()) c[0] = -psi.coeffs[0] / (pi * std::log(2.0));
    for (std::size_t n = 1; n < c.size(); ++n)
        c[n] = -(static_cast<double>(n) / pi) * psi.coeffs[n];
    return ChebyshevDensity(std::move(c));
}

/// The constant a(psi) of the Carleman formula. In the spectral basis the
/// Hilbert-transform bracket cancels every mode n >= 1 exactly, so a(psi)
/// is the T_0 coefficient of psi (independent of the evaluation point).
inline double carleman_constant(const SmoothBoundaryData& psi) {
    return psi.coeffs.empty() ? 0.0 : psi.coeffs[0];
}

/// Finite Hilbert transform with the sqrt weight:
///   PV int sqrt(1-y^2) g(y) / (x - y) dy  with  g = sum a_n U_n,
/// mapped exactly by int sqrt(1-y^2) U_{n-1}(y)/(x-y) dy = pi T_n(x).
/// Input: U-basis coefficients a_0..a_{m}. Output: T-series (coefficient of
/// T_{n+1} is pi a_n; the T_0 term vanishes).
inline SmoothBoundaryData finite_hilbert_transform(std::span<const double> g_ucoeffs) {
    std::vector<double> b(g_ucoeffs.size() + 1, 0.0);
    for (std::size_t n = 0; n < g_ucoeffs.size(); ++n) b[n + 1] = pi * g_ucoeffs[n];
    return SmoothBoundaryData(std::move(b));
}

/// Shifted log kernel int ln|d + orientation (s - t)| phi(t) dt for |d| > 2.
/// Gauss-Chebyshev quadrature in t absorbs the 1/sqrt(1-t^2) weight exactly;
/// the kernel is analytic on the integration square when |d| > 2.
///
/// `out_modes`: number of Chebyshev modes of the result (defaults to the
/// density's own resolution). `quad_points`: 0 = pick automatically from d.
inline SmoothBoundaryData apply_shifted_log_kernel(double d, const ChebyshevDensity& phi,
                                                   int orientation, std::size_t out_modes = 0,
                                                   std::size_t quad_points = 0) {
    if (std::abs(d) <= 2.0)
        throw SingularKernel("shifted log kernel requires |d| > 2");
    if (orientation != 1 && orientation != -1)
        throw Error("orientation must be +1 or -1");
    if (out_modes == 0) out_modes = phi.coeffs.size();
    if (out_modes == 0) return SmoothBoundaryData{};
    if (quad_points == 0) {
        const double margin = std::abs(d) - 2.0;
        quad_points = margin >= 0.5 ? 256 : (margin >= 0.1 ? 512 : 1024);
        quad_points = std::max(quad_points, 2 * phi.coeffs.size() + 16);
    }

    const auto tq = cheb_gauss_nodes(quad_points);
    std::vector<double> pq(quad_points);
    for (std::size_t q = 0; q < quad_points; ++q) pq[q] = phi.smooth_part(tq[q]);
    const double w = pi / static_cast<double>(quad_points);

    const auto sq = cheb_gauss_nodes(out_modes);
    std::vector<double> vals(out_modes);
    for (std::size_t j = 0; j < out_modes; ++j) {
        double acc = 0.0;
        for (std::size_t q = 0; q < quad_points; ++q)
            acc += pq[q] * std::log(std::abs(d + orientation * (sq[j] - tq[q])));
        vals[j] = w * acc;
    }
    return SmoothBoundaryData(cheb_fit(vals));
}

} // namespace nesc
