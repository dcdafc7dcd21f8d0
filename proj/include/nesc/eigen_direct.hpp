// SPDX-License-Identifier: Apache-2.0
#pragma once

// Perturbed eigenvalues as characteristic values: lambda_eps is the point
// where the frequency-domain boundary operator A_eps(lambda) (the arc
// restriction of the frequency kernel) loses invertibility. Discretize in
// the weighted Chebyshev basis, track the smallest singular value over the
// search window, and refine the dip by golden section plus a local
// quadratic fit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "nesc/cheblog.hpp"
#include "nesc/direct_solver.hpp"
#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/neumann_disk.hpp"

namespace nesc {

namespace detail {

/// Discretized A_eps(lambda) in the Chebyshev pair of bases.
inline Eigen::MatrixXd characteristic_matrix(const DiskKernelProvider& prov,
                                             const TargetConfiguration& config,
                                             double lambda, std::size_t N) {
    const std::size_t n = config.arcs.size(), B = N + 1;
    const std::size_t Q = std::max<std::size_t>(2 * B + 16, 128);
    const ArcBasis basis(B, Q);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * B, n * B);
    for (std::size_t i = 0; i < n; ++i) {
        const double ei = config.arcs[i].half_length;
        const double si = config.arcs[i].center_angle;
        A(i * B, i * B) += std::log(2.0) - std::log(ei);
        for (std::size_t k = 1; k < B; ++k)
            A(i * B + k, i * B + k) += 1.0 / static_cast<double>(k);
        add_smooth_block(A, i * B, i * B, basis, B, [&](double tau, double sigma) {
            const double dth = ei * (tau - sigma);
            return -log_sinc(0.5 * dth) / pi + prov.boundary_smooth_remainder(lambda, dth);
        });
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double ej = config.arcs[j].half_length;
            const double sj = config.arcs[j].center_angle;
            add_smooth_block(A, i * B, j * B, basis, B, [&](double tau, double sigma) {
                const double gap = si - sj + ei * tau - ej * sigma;
                return -std::log(2.0 * std::abs(std::sin(0.5 * gap))) / pi +
                       prov.boundary_smooth_remainder(lambda, gap);
            });
        }
    }
    // precondition by the diagonal spectral part: without it the smallest
    // singular value is pinned at the 1/N mode decay and the characteristic
    // dip is invisible
    for (std::size_t i = 0; i < n; ++i) {
        const double ei = config.arcs[i].half_length;
        A.row(i * B) /= std::log(2.0) - std::log(ei);
        for (std::size_t k = 1; k < B; ++k)
            A.row(i * B + k) *= static_cast<double>(k);
    }
    return A;
}

inline double smallest_singular_value(const Eigen::MatrixXd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues().tail(1)(0);
}

} // namespace detail

/// Characteristic value of the mixed problem in (window_lo, window_hi).
/// The window must contain exactly one unperturbed Neumann eigenvalue.
inline double eigen_direct(const DiskKernelProvider& prov, std::size_t j0,
                           const TargetConfiguration& config, double window_lo,
                           double window_hi, std::size_t N = 24) {
    validate(config);
    const auto& table = prov.eigen_table();
    if (j0 < 1 || j0 > table.size()) throw MissingEigenpair("eigenpair index out of table");
    std::vector<double> in_window;
    for (const auto& e : table)
        if (e.lambda > window_lo && e.lambda < window_hi) in_window.push_back(e.lambda);
    std::sort(in_window.begin(), in_window.end());
    std::size_t inside = 0;
    for (std::size_t k = 0; k < in_window.size(); ++k)
        if (k == 0 || in_window[k] - in_window[k - 1] > 1e-10 * (1.0 + in_window[k]))
            ++inside;
    if (inside != 1)
        throw Error("search window must isolate exactly one unperturbed eigenvalue");
    const double lam0 = table[j0 - 1].lambda;
    if (!(lam0 > window_lo && lam0 < window_hi))
        throw NoRootInWindow("requested eigenvalue is outside the window");

    auto sigma = [&](double lam) {
        return detail::smallest_singular_value(
            detail::characteristic_matrix(prov, config, lam, N));
    };

    // coarse scan
    const std::size_t scan = 48;
    std::vector<double> ls(scan), vs(scan);
    for (std::size_t k = 0; k < scan; ++k) {
        ls[k] = window_lo + (window_hi - window_lo) * (static_cast<double>(k) + 0.5) /
                                static_cast<double>(scan);
        vs[k] = sigma(ls[k]);
    }
    const double norm_scale = *std::max_element(vs.begin(), vs.end());
    std::vector<std::size_t> dips;
    for (std::size_t k = 1; k + 1 < scan; ++k)
        if (vs[k] < vs[k - 1] && vs[k] < vs[k + 1] && vs[k] < 0.2 * norm_scale)
            dips.push_back(k);
    if (dips.empty()) throw NoRootInWindow("no singular-value dip inside the window");
    if (dips.size() > 1) {
        std::size_t deep = 0;
        for (std::size_t d : dips)
            if (vs[d] < 1e-3 * norm_scale) ++deep;
        if (deep > 1)
            throw MultipleRootsSuspected("several deep singular-value dips in the window");
        std::sort(dips.begin(), dips.end(),
                  [&](std::size_t a, std::size_t b) { return vs[a] < vs[b]; });
        dips.resize(1);
    }

    // golden-section refinement on the bracketing triple
    double a = ls[dips[0] - 1], b = ls[dips[0] + 1];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sigma(x1), f2 = sigma(x2);
    while (b - a > 1e-9 * (1.0 + std::abs(b))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sigma(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sigma(x2);
        }
    }
    double root = 0.5 * (a + b);

    // local quadratic fit on sigma^2 (smooth through a simple dip)
    {
        const double h = std::max(1e-7, 1e-6 * std::abs(root));
        const double fm = sigma(root - h), f0 = sigma(root), fp = sigma(root + h);
        const double den = fm - 2.0 * f0 + fp;
        if (den > 0.0) {
            const double shift = 0.5 * h * (fm - fp) / den;
            if (std::abs(shift) < h) root += shift;
        }
    }

    const double res = sigma(root);
    const double mat_norm =
        detail::characteristic_matrix(prov, config, root, N).norm();
    if (res > 1e-6 * mat_norm)
        throw NoRootInWindow("singular value at candidate root is not small");
    return root;
}

} // namespace nesc
