// SPDX-License-Identifier: Apache-2.0
#pragma once

// Coupled log-kernel system for clustered absorbing arcs.
//
// In scaled arc variables each density phi_i lives on [-1, 1]; the system is
//   sum_j L_ij [phi_j] = 1  on each arc,  L_ij[phi](s) = int ln|d_ij + s - t| phi(t) dt,
// with gap matrix d_ij = (s_i - s_j)/eps. Diagonal blocks are the exact
// spectral form of the interval log operator; off-diagonal kernels are
// analytic for |d_ij| > 2 and discretize by Gauss-Chebyshev quadrature.
// The interaction coefficients are the density masses alpha_i = pi c0_i.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nesc/cheblog.hpp"
#include "nesc/errors.hpp"

namespace nesc {

struct ClusterGeometry {
    std::size_t n = 0;
    Eigen::MatrixXd offsets; // d_ij = (s_i - s_j)/eps, antisymmetric

    static ClusterGeometry symmetric_pair(double d) {
        ClusterGeometry g;
        g.n = 2;
        g.offsets = Eigen::MatrixXd::Zero(2, 2);
        g.offsets(0, 1) = -d;
        g.offsets(1, 0) = d;
        return g;
    }

    /// Gap matrix from scaled arc centers s_i/eps (any units, differences used).
    static ClusterGeometry from_scaled_centers(const std::vector<double>& s_over_eps) {
        ClusterGeometry g;
        g.n = s_over_eps.size();
        g.offsets = Eigen::MatrixXd::Zero(g.n, g.n);
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                g.offsets(i, j) = s_over_eps[i] - s_over_eps[j];
        return g;
    }

    void validate() const {
        if (n < 1) throw Error("cluster must contain at least one arc");
        if (offsets.rows() != static_cast<Eigen::Index>(n) ||
            offsets.cols() != static_cast<Eigen::Index>(n))
            throw Error("offset matrix dimension mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(offsets(i, j) + offsets(j, i)) > 1e-12)
                    throw Error("offset matrix must be antisymmetric");
                if (i != j && std::abs(offsets(i, j)) <= 2.0)
                    throw InvalidGap("scaled gap |d_ij| must exceed 2");
            }
        }
    }
};

struct ClusterSolution {
    std::vector<ChebyshevDensity> densities;
    std::vector<double> alphas;
    double condition_estimate = 0.0;
    double residual = 0.0;
};

/// Dense discrete operator: block (i, j) maps X1 coefficients of phi_j to Y1
/// coefficients of L_ij[phi_j], truncation N (so N+1 modes per arc).
inline Eigen::MatrixXd assemble_system(const ClusterGeometry& geom, std::size_t N) {
    geom.validate();
    const std::size_t n = geom.n, B = N + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * B, n * B);

    for (std::size_t i = 0; i < n; ++i) {
        // exact spectral diagonal block
        A(i * B, i * B) = -pi * std::log(2.0);
        for (std::size_t k = 1; k < B; ++k)
            A(i * B + k, i * B + k) = -pi / static_cast<double>(k);
    }

    const std::size_t Q = std::max<std::size_t>(2 * B + 16, 512);
    const auto tq = cheb_gauss_nodes(Q);  // quadrature nodes (source)
    const auto sp = cheb_gauss_nodes(B);  // collocation nodes (target)
    const double w = pi / static_cast<double>(Q);

    // Chebyshev values at quadrature nodes, T_k(t_q)
    std::vector<std::vector<double>> Tk(B, std::vector<double>(Q));
    for (std::size_t q = 0; q < Q; ++q) {
        double t0 = 1.0, t1 = tq[q];
        for (std::size_t k = 0; k < B; ++k) {
            double v = (k == 0) ? t0 : (k == 1 ? t1 : 0.0);
            if (k >= 2) {
                v = 2.0 * tq[q] * t1 - t0;
                t0 = t1;
                t1 = v;
            }
            Tk[k][q] = v;
        }
    }

    std::vector<double> samples(B), col;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = geom.offsets(i, j);
            // kernel samples ln|d + s_p - t_q| scaled by the quadrature weight
            Eigen::MatrixXd K(B, Q);
            for (std::size_t p = 0; p < B; ++p)
                for (std::size_t q = 0; q < Q; ++q)
                    K(p, q) = w * std::log(std::abs(d + sp[p] - tq[q]));
            for (std::size_t k = 0; k < B; ++k) {
                for (std::size_t p = 0; p < B; ++p) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < Q; ++q) acc += K(p, q) * Tk[k][q];
                    samples[p] = acc;
                }
                col = cheb_fit(samples);
                for (std::size_t p = 0; p < B; ++p) A(i * B + p, j * B + k) = col[p];
            }
        }
    }
    return A;
}

namespace detail {
inline std::pair<std::vector<std::vector<double>>, std::pair<double, double>>
solve_cluster_once(const ClusterGeometry& geom, std::size_t N) {
    const std::size_t n = geom.n, B = N + 1;
    Eigen::MatrixXd A = assemble_system(geom, N);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n * B);
    for (std::size_t i = 0; i < n; ++i) b(i * B) = 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    const double cond = (rcond > 0.0) ? 1.0 / rcond : 1e300;
    if (cond > 1e12) throw IllConditioned("cluster system condition estimate above 1e12");
    Eigen::VectorXd c = lu.solve(b);
    const double residual = (A * c - b).norm() / b.norm();
    std::vector<std::vector<double>> coeffs(n, std::vector<double>(B));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < B; ++k) coeffs[i][k] = c(i * B + k);
    return {std::move(coeffs), {cond, residual}};
}
} // namespace detail

inline ClusterSolution solve_cluster(const ClusterGeometry& geom, std::size_t N = 64) {
    auto [coeffs, diag] = detail::solve_cluster_once(geom, N);
    auto [coeffs2, diag2] = detail::solve_cluster_once(geom, 2 * N);
    (void)diag2;
    ClusterSolution sol;
    sol.condition_estimate = diag.first;
    sol.residual = diag.second;
    for (std::size_t i = 0; i < geom.n; ++i) {
        sol.densities.emplace_back(coeffs[i]);
        const double a = pi * coeffs[i][0];
        const double a2 = pi * coeffs2[i][0];
        if (std::abs(a - a2) > 1e-6)
            throw NonConvergent("interaction coefficient unstable under truncation doubling");
        sol.alphas.push_back(a);
    }
    return sol;
}

/// alpha(d) from the symmetric two-arc cluster; cached by (d, N).
inline double alpha_of_d(double d, std::size_t N = 64) {
    if (!(d > 2.0)) throw InvalidGap("cluster gap d must exceed 2");
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::size_t>, double> cache;
    const auto key = std::make_pair(static_cast<std::int64_t>(std::llround(d * 1e12)), N);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double a = solve_cluster(ClusterGeometry::symmetric_pair(d), N).alphas[0];
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = a;
    return a;
}

} // namespace nesc
