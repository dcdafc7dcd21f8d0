// SPDX-License-Identifier: Apache-2.0
#pragma once

// Eigenvalue perturbation of the mixed Dirichlet-Neumann disk problem when a
// small absorbing arc opens in the reflecting boundary.
//
// Leading order the shift is -pi/ln(eps) |u0(x*)|^2. The two-term value adds
// the arc-scale structure: with the scaled log operator
//   L_eps = L + ln(eps) * (mass functional),
// term1 = -pi <L_eps^-1[u0], u0> and term2 = +pi^2 <L_eps^-1 R L_eps^-1[u0], u0>,
// R being the holomorphic remainder of the frequency kernel at the
// unperturbed eigenvalue (pole-pencil decomposition). Only simple (radially
// symmetric) modes are supported; the degenerate m >= 1 pairs refuse.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "nesc/cheblog.hpp"
#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/neumann_disk.hpp"
#include "nesc/potential.hpp"

namespace nesc {

struct EigenShiftResult {
    std::size_t j0 = 0;
    double lambda0 = 0.0;
    double leading_shift = 0.0;
    double corrected_shift = 0.0;
    double epsilon = 0.0;
    double x_star_angle = 0.0;
};

namespace detail {

inline const NeumannEigenpair& simple_pair(const DiskKernelProvider& prov, std::size_t j0) {
    const auto& table = prov.eigen_table();
    if (j0 < 1 || j0 > table.size()) throw MissingEigenpair("eigenpair index out of table");
    const auto& pair = table[j0 - 1];
    if (pair.angular_m != 0)
        throw DegenerateEigenvalue("shift formulas require a simple (m = 0) eigenvalue");
    for (std::size_t j = 0; j < table.size(); ++j) {
        if (j + 1 == j0) continue;
        if (std::abs(table[j].lambda - pair.lambda) < 1e-8)
            throw DegenerateEigenvalue("eigenvalue is not isolated in the table");
    }
    return pair;
}

/// (L + ln(eps) mass)^{-1}: exact per mode in the Chebyshev pair of bases.
inline ChebyshevDensity scaled_log_inverse(const SmoothBoundaryData& b, double eps) {
    std::vector<double> c(b.coeffs.size(), 0.0);
    if (!c.empty()) c[0] = b.coeffs[0] / (pi * std::log(0.5 * eps));
    for (std::size_t n = 1; n < c.size(); ++n)
        c[n] = -(static_cast<double>(n) / pi) * b.coeffs[n];
    return ChebyshevDensity(std::move(c));
}

/// int_{-1}^{1} phi(t) psi(t) dt for phi in X1, psi in Y1.
inline double weighted_pairing(const ChebyshevDensity& phi, const SmoothBoundaryData& psi) {
    const std::size_t n = std::min(phi.coeffs.size(), psi.coeffs.size());
    if (n == 0) return 0.0;
    double s = pi * phi.coeffs[0] * psi.coeffs[0];
    for (std::size_t k = 1; k < n; ++k) s += 0.5 * pi * phi.coeffs[k] * psi.coeffs[k];
    return s;
}

/// Boundary trace of the eigenfunction on the arc, as a Chebyshev series in
/// the scaled arc parameter.
inline SmoothBoundaryData arc_trace(const NeumannEigenpair& pair, const BoundaryArc& arc,
                                    std::size_t modes) {
    const auto nodes = cheb_gauss_nodes(modes);
    std::vector<double> vals(modes);
    for (std::size_t j = 0; j < modes; ++j)
        vals[j] = pair.boundary_value(arc.center_angle + arc.half_length * nodes[j]);
    return SmoothBoundaryData(cheb_fit(vals));
}

} // namespace detail

/// Leading-order shift -pi/ln(eps) * |u0(x*)|^2.
inline double leading_shift(const DiskKernelProvider& prov, std::size_t j0,
                            const BoundaryArc& arc) {
    const auto& pair = detail::simple_pair(prov, j0);
    const double u = pair.boundary_value(arc.center_angle);
    return -pi / std::log(arc.half_length) * u * u;
}

/// Two-term shift: see the header comment. `modes` controls the arc-scale
/// Chebyshev resolution; the integrals are exact in that basis.
inline double corrected_shift(const DiskKernelProvider& prov, std::size_t j0,
                              const BoundaryArc& arc, std::size_t modes = 24) {
    const auto& pair = detail::simple_pair(prov, j0);
    const double eps = arc.half_length;
    const auto u0 = detail::arc_trace(pair, arc, modes);
    const auto phi = detail::scaled_log_inverse(u0, eps);
    const double term1 = -pi * detail::weighted_pairing(phi, u0);

    // term2: push phi through the holomorphic remainder of the kernel at
    // lambda0, invert again, pair with the trace.
    const std::size_t Q = std::max<std::size_t>(2 * modes + 16, 64);
    const auto sq = cheb_gauss_nodes(Q);
    const auto tp = cheb_gauss_nodes(modes);
    const double w = pi / static_cast<double>(Q);
    std::vector<double> phi_q(Q);
    for (std::size_t q = 0; q < Q; ++q) phi_q[q] = phi.smooth_part(sq[q]);
    std::vector<double> b2(modes);
    for (std::size_t p = 0; p < modes; ++p) {
        const Vec2 xp = arc_point(arc.center_angle + eps * tp[p]);
        double acc = 0.0;
        for (std::size_t q = 0; q < Q; ++q) {
            const Vec2 zq = arc_point(arc.center_angle + eps * sq[q]);
            acc += prov.regular_part(pair.lambda, j0, xp, zq) * phi_q[q];
        }
        b2[p] = w * acc;
    }
    const SmoothBoundaryData rphi(cheb_fit(b2));
    const auto v = detail::scaled_log_inverse(rphi, eps);
    const double term2 = pi * pi * detail::weighted_pairing(v, u0);
    return term1 + term2;
}

inline EigenShiftResult shift_result(const DiskKernelProvider& prov, std::size_t j0,
                                     const BoundaryArc& arc) {
    EigenShiftResult r;
    r.j0 = j0;
    r.lambda0 = detail::simple_pair(prov, j0).lambda;
    r.leading_shift = leading_shift(prov, j0, arc);
    r.corrected_shift = corrected_shift(prov, j0, arc);
    r.epsilon = arc.half_length;
    r.x_star_angle = arc.center_angle;
    return r;
}

/// Externally supplied eigenpair of the weighted (drift) operator, normalized
/// by int |u|^2 e^phi = 1.
struct DriftEigenpair {
    double lambda0 = 0.0;
    std::function<double(Vec2)> value;
};

/// Drift leading shift -pi/ln(eps) |u0_F(x*)|^2 e^{phi(x*)}. Constant
/// potentials reduce exactly to the free case (gauge invariance); general
/// potentials require a supplied weighted eigenpair.
inline double drift_leading_shift(const DiskKernelProvider& prov, std::size_t j0,
                                  const BoundaryArc& arc, const Potential& phi,
                                  const DriftEigenpair* pair = nullptr) {
    if (pair == nullptr) {
        if (!phi.is_constant)
            throw MissingEigenpair("nonconstant drift requires a supplied weighted eigenpair");
        return leading_shift(prov, j0, arc);
    }
    const Vec2 xs = arc.center_point();
    const double u = pair->value(xs);
    return -pi / std::log(arc.half_length) * u * u * std::exp(phi(xs));
}

} // namespace nesc
