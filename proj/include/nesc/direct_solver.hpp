// SPDX-License-Identifier: Apache-2.0
#pragma once

// Direct boundary-integral solver for the mixed problem on the disk:
// Delta u = -1 (or the weighted drift analogue), u = 0 on the absorbing
// arcs, reflecting elsewhere. Representation: u = g + sum_i int K(x, z_i(t))
// psi_i(t) dt + C with the flux densities psi_i as unknowns together with C,
// closed by the total-flux compatibility row.
//
// Per arc the density is expanded in the weighted Chebyshev basis in the
// scaled arc parameter; the chord log kernel splits into the exact interval
// log operator (spectral), the ln(eps) mass term, and an analytic
// "sine-over-argument" correction handled by quadrature, so convergence in
// the mode count is geometric. Cross-arc kernels are analytic and handled by
// the same quadrature.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nesc/cheblog.hpp"
#include "nesc/drift_pde.hpp"
#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/neumann_disk.hpp"
#include "nesc/potential.hpp"

namespace nesc {

struct DirectSolution {
    std::vector<BoundaryArc> arcs;
    std::vector<ChebyshevDensity> densities; // scaled: psi_i(s_i + eps t) * eps
    double c_eps = 0.0;
    std::size_t resolution = 0;
    std::function<double(Vec2)> field;
    bool drift = false;

    /// Flux mass through arc i: int_{arc} psi_i dt = pi c0.
    double arc_mass(std::size_t i) const { return mass(densities[i]); }

    double total_mass() const {
        double s = 0.0;
        for (std::size_t i = 0; i < densities.size(); ++i) s += arc_mass(i);
        return s;
    }

    double operator()(Vec2 x) const { return field(x); }
};

namespace detail {

/// ln(|sin(w)| / |w|), the analytic chord/arc correction factor.
inline double log_sinc(double w) {
    const double aw = std::abs(w);
    if (aw < 1e-6) return -w * w / 6.0 - w * w * w * w / 180.0;
    return std::log(std::abs(std::sin(w)) / aw);
}

struct ArcBasis {
    std::vector<double> colloc;            // B collocation nodes
    std::vector<double> quad;              // Q quadrature nodes
    std::vector<std::vector<double>> Tk;   // T_k at quadrature nodes [B][Q]
    double qw = 0.0;                       // Gauss-Chebyshev weight

    ArcBasis(std::size_t B, std::size_t Q)
        : colloc(cheb_gauss_nodes(B)), quad(cheb_gauss_nodes(Q)), Tk(B, std::vector<double>(Q)),
          qw(pi / static_cast<double>(Q)) {
        for (std::size_t q = 0; q < Q; ++q) {
            double t0 = 1.0, t1 = quad[q];
            for (std::size_t k = 0; k < B; ++k) {
                double v;
                if (k == 0) v = t0;
                else if (k == 1) v = t1;
                else {
                    v = 2.0 * quad[q] * t1 - t0;
                    t0 = t1;
                    t1 = v;
                }
                Tk[k][q] = v;
            }
        }
    }
};

/// Project a smooth kernel G(tau, sigma) onto the (Y1 row) x (X1 column)
/// block: entries are Chebyshev coefficients in tau of int G(., sigma)
/// T_k(sigma)/sqrt(1-sigma^2) d sigma.
template <class G>
inline void add_smooth_block(Eigen::MatrixXd& A, std::size_t row0, std::size_t col0,
                             const ArcBasis& basis, std::size_t B, G&& g) {
    const std::size_t Q = basis.quad.size();
    Eigen::MatrixXd K(B, Q);
    for (std::size_t p = 0; p < B; ++p)
        for (std::size_t q = 0; q < Q; ++q)
            K(p, q) = basis.qw * g(basis.colloc[p], basis.quad[q]);
    std::vector<double> samples(B);
    for (std::size_t k = 0; k < B; ++k) {
        for (std::size_t p = 0; p < B; ++p) {
            double acc = 0.0;
            for (std::size_t q = 0; q < Q; ++q) acc += K(p, q) * basis.Tk[k][q];
            samples[p] = acc;
        }
        const auto col = cheb_fit(samples);
        for (std::size_t p = 0; p < B; ++p) A(row0 + p, col0 + k) += col[p];
    }
}

inline DirectSolution solve_free_at(const TargetConfiguration& config, std::size_t N) {
    const std::size_t n = config.arcs.size(), B = N + 1;
    const std::size_t Q = std::max<std::size_t>(2 * B + 16, 256);
    const ArcBasis basis(B, Q);
    const std::size_t dim = n * B + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

    for (std::size_t i = 0; i < n; ++i) {
        const double ei = config.arcs[i].half_length;
        const double si = config.arcs[i].center_angle;
        // exact spectral part of the same-arc chord log:
        //   -(1/pi) [ L + ln(eps_i) mass ]
        A(i * B, i * B) += std::log(2.0) - std::log(ei); // -(1/pi)(-pi ln2 + pi ln e)
        for (std::size_t k = 1; k < B; ++k)
            A(i * B + k, i * B + k) += 1.0 / static_cast<double>(k);
        // analytic correction ln(2 sin) - ln(eps |tau - sigma|)
        add_smooth_block(A, i * B, i * B, basis, B, [&](double tau, double sigma) {
            return -log_sinc(0.5 * ei * (tau - sigma)) / pi;
        });
        // cross-arc kernels
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double ej = config.arcs[j].half_length;
            const double sj = config.arcs[j].center_angle;
            add_smooth_block(A, i * B, j * B, basis, B, [&](double tau, double sigma) {
                const double gap = si - sj + ei * tau - ej * sigma;
                return -std::log(2.0 * std::abs(std::sin(0.5 * gap))) / pi;
            });
        }
        A(i * B, n * B) = 1.0; // the constant enters the T_0 row of each arc
        A(n * B, i * B) = pi;  // compatibility: sum of masses
    }
    rhs(n * B) = -TargetConfiguration::domain_area;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (rcond <= 0.0 || 1.0 / rcond > 1e12)
        throw IllConditioned("direct system condition estimate above 1e12");
    Eigen::VectorXd sol = lu.solve(rhs);

    DirectSolution out;
    out.arcs = config.arcs;
    out.resolution = N;
    out.c_eps = sol(n * B);
    for (std::size_t i = 0; i < n; ++i)
        out.densities.emplace_back(
            std::vector<double>(sol.data() + i * B, sol.data() + (i + 1) * B));

    auto arcs = config.arcs;
    auto dens = out.densities;
    const double C = out.c_eps;
    auto quad = basis.quad;
    const double qw = basis.qw;
    out.field = [arcs, dens, C, quad, qw](Vec2 x) {
        double u = 0.25 * (1.0 - x.norm_sq()) + C;
        const double r = x.norm();
        const double th = std::atan2(x.y, x.x);
        // on-arc evaluation must route the singular log through the spectral
        // identity; quadrature alone would see the singularity
        long on_arc = -1;
        if (std::abs(r - 1.0) < 1e-10) {
            for (std::size_t i = 0; i < arcs.size(); ++i)
                if (arcs[i].contains_angle(th)) on_arc = static_cast<long>(i);
        }
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const double ei = arcs[i].half_length, si = arcs[i].center_angle;
            if (static_cast<long>(i) == on_arc) {
                double tau = std::remainder(th - si, 2.0 * pi) / ei;
                tau = std::clamp(tau, -1.0, 1.0);
                const auto Lphi = apply_log_kernel(dens[i]);
                double acc = Lphi(tau) + std::log(ei) * mass(dens[i]);
                double corr = 0.0;
                for (double s : quad)
                    corr += dens[i].smooth_part(s) * log_sinc(0.5 * ei * (tau - s));
                u -= (acc + qw * corr) / pi;
            } else {
                double acc = 0.0;
                for (double s : quad) {
                    const Vec2 z = arc_point(si + ei * s);
                    acc += dens[i].smooth_part(s) * std::log(distance(x, z));
                }
                u -= qw * acc / pi;
            }
        }
        return u;
    };
    return out;
}

inline DirectSolution solve_drift_at(const TargetConfiguration& config, const Potential& pot,
                                     std::size_t N, std::size_t grid_r, std::size_t grid_t) {
    const std::size_t n = config.arcs.size(), B = N + 1;
    const std::size_t Q = std::max<std::size_t>(2 * B + 8, 32);
    const ArcBasis basis(B, Q);
    DriftDiskSolver pde(pot, grid_r, grid_t);
    const auto gF = pde.torsion_field();

    // kernel regular fields for every source quadrature node of every arc
    std::vector<std::vector<DriftDiskSolver::Field>> vfields(n);
    std::vector<std::vector<double>> src_angle(n, std::vector<double>(Q));
    for (std::size_t j = 0; j < n; ++j) {
        vfields[j].reserve(Q);
        for (std::size_t q = 0; q < Q; ++q) {
            src_angle[j][q] = config.arcs[j].center_angle +
                              config.arcs[j].half_length * basis.quad[q];
            vfields[j].push_back(pde.kernel_regular_field(src_angle[j][q]));
        }
    }

    const std::size_t dim = n * B + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

    // weight factors e^{-phi(z)} along each source arc
    std::vector<std::vector<double>> wphi(n, std::vector<double>(Q));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < Q; ++q)
            wphi[j][q] = std::exp(-pot(arc_point(src_angle[j][q])));

    for (std::size_t i = 0; i < n; ++i) {
        const double ei = config.arcs[i].half_length;
        const double si = config.arcs[i].center_angle;
        for (std::size_t j = 0; j < n; ++j) {
            const double ej = config.arcs[j].half_length;
            const double sj = config.arcs[j].center_angle;
            if (j == i) {
                // singular piece through the spectral identity, with the
                // smooth weight folded into the density: the operator is
                // S . M_w where M_w multiplies by e^{-phi(z(sigma))} in
                // coefficient space and S = -(1/pi)(L + ln(eps) mass).
                const std::size_t F = 2 * B;
                const auto fine = cheb_gauss_nodes(F);
                std::vector<double> wf(F);
                for (std::size_t q = 0; q < F; ++q)
                    wf[q] = std::exp(-pot(arc_point(si + ei * fine[q])));
                Eigen::MatrixXd Mw = Eigen::MatrixXd::Zero(B, B);
                std::vector<double> prod(F);
                for (std::size_t k = 0; k < B; ++k) {
                    for (std::size_t q = 0; q < F; ++q) {
                        // T_k at the fine node via Clenshaw-free recurrence
                        double t0 = 1.0, t1 = fine[q], v = (k == 0) ? 1.0 : fine[q];
                        for (std::size_t m = 2; m <= k; ++m) {
                            v = 2.0 * fine[q] * t1 - t0;
                            t0 = t1;
                            t1 = v;
                        }
                        prod[q] = wf[q] * v;
                    }
                    const auto pc = cheb_fit(prod);
                    for (std::size_t p = 0; p < B; ++p) Mw(p, k) = pc[p];
                }
                Eigen::VectorXd s(B);
                s(0) = std::log(2.0) - std::log(ei);
                for (std::size_t k = 1; k < B; ++k) s(k) = 1.0 / static_cast<double>(k);
                A.block(i * B, i * B, B, B) += s.asDiagonal() * Mw;
                // analytic remainder of the chord log, weight inside
                add_smooth_block(A, i * B, i * B, basis, B, [&](double tau, double sigma) {
                    const double w = std::exp(-pot(arc_point(si + ei * sigma)));
                    return -w * log_sinc(0.5 * ei * (tau - sigma)) / pi;
                });
            } else {
                add_smooth_block(A, i * B, j * B, basis, B, [&](double tau, double sigma) {
                    const double w = std::exp(-pot(arc_point(sj + ej * sigma)));
                    const double gap = si - sj + ei * tau - ej * sigma;
                    return -w * std::log(2.0 * std::abs(std::sin(0.5 * gap))) / pi;
                });
            }
            // regular kernel fields, column by column
            std::vector<double> samples(B);
            for (std::size_t k = 0; k < B; ++k) {
                for (std::size_t p = 0; p < B; ++p) {
                    const double th = si + ei * basis.colloc[p];
                    double acc = 0.0;
                    for (std::size_t q = 0; q < Q; ++q)
                        acc += vfields[j][q].boundary_value(th) * basis.Tk[k][q];
                    samples[p] = basis.qw * acc;
                }
                const auto col = cheb_fit(samples);
                for (std::size_t p = 0; p < B; ++p) A(i * B + p, j * B + k) += col[p];
            }
        }
        // torsion trace and constant
        {
            std::vector<double> gvals(B);
            for (std::size_t p = 0; p < B; ++p)
                gvals[p] = gF.boundary_value(si + ei * basis.colloc[p]);
            const auto gc = cheb_fit(gvals);
            for (std::size_t p = 0; p < B; ++p) rhs(i * B + p) -= gc[p];
        }
        A(i * B, n * B) = 1.0;
        A(n * B, i * B) = pi;
    }
    rhs(n * B) = -pde.weighted_area();

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (rcond <= 0.0 || 1.0 / rcond > 1e12)
        throw IllConditioned("drift direct system condition estimate above 1e12");
    Eigen::VectorXd sol = lu.solve(rhs);

    DirectSolution out;
    out.arcs = config.arcs;
    out.resolution = N;
    out.drift = true;
    out.c_eps = sol(n * B);
    for (std::size_t i = 0; i < n; ++i)
        out.densities.emplace_back(
            std::vector<double>(sol.data() + i * B, sol.data() + (i + 1) * B));

    // field evaluator: torsion + kernel sums + constant
    auto arcs = config.arcs;
    auto dens = out.densities;
    const double C = out.c_eps;
    auto quad = basis.quad;
    const double qw = basis.qw;
    auto gshared = std::make_shared<DriftDiskSolver::Field>(gF);
    auto vshared = std::make_shared<std::vector<std::vector<DriftDiskSolver::Field>>>(
        std::move(vfields));
    auto sangle = src_angle;
    auto wz = wphi;
    out.field = [arcs, dens, C, quad, qw, gshared, vshared, sangle, wz](Vec2 x) {
        double u = (*gshared)(x) + C;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            double acc = 0.0;
            for (std::size_t q = 0; q < quad.size(); ++q) {
                const Vec2 z = arc_point(sangle[i][q]);
                const double K = (*vshared)[i][q](x) -
                                 wz[i][q] / pi * std::log(distance(x, z));
                acc += dens[i].smooth_part(quad[q]) * K;
            }
            u += qw * acc;
        }
        return u;
    };
    return out;
}

} // namespace detail

/// Solve the mixed problem directly. Free case: spectral-convergence
/// certificate via truncation doubling. Drift case: finite-volume kernels,
/// certificate not enforced (grid-limited accuracy).
inline DirectSolution solve_direct(const TargetConfiguration& config,
                                   const std::optional<Potential>& potential = std::nullopt,
                                   std::size_t N = 32) {
    validate(config);
    if (!potential || potential->is_constant) {
        DirectSolution a = detail::solve_free_at(config, N);
        DirectSolution b = detail::solve_free_at(config, 2 * N);
        if (std::abs(a.c_eps - b.c_eps) > 1e-9)
            throw NonConvergent("direct solve not converged under truncation doubling");
        return b;
    }
    return detail::solve_drift_at(config, *potential, N, 96, 192);
}

} // namespace nesc
