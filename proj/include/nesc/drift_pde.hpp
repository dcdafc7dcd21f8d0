// SPDX-License-Identifier: Apache-2.0
#pragma once

// Weighted Poisson solves on the unit disk:  div(e^phi grad u) = f  with
// prescribed weighted Neumann data  e^phi du/dnu = g  on the circle.
//
// Conservative cell-centered finite volumes on a polar grid; the constant
// null direction is pinned by a bordered Lagrange row (area-weighted zero
// mean) and the data imbalance is projected out, so every solve is the
// minimum-norm compatible one. Used to manufacture the drift kernel fields
// the paper defines only as PDE solutions: the boundary-source field is
// regularized by peeling off an explicit log so both the interior source and
// the boundary data stay bounded.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/potential.hpp"
#include "nesc/quadrature.hpp"

namespace nesc {

class DriftDiskSolver {
public:
    struct Field {
        std::size_t nr = 0, nt = 0;
        double hr = 0.0, ht = 0.0;
        std::vector<double> values;                  // cell centers, nr*nt
        std::function<double(double)> boundary_slope; // du/dr at r = 1 by angle

        double cell(std::size_t i, std::size_t j) const { return values[i * nt + j]; }

        /// Bilinear interpolation at polar (r, theta); one-sided at the axis,
        /// flux-corrected extrapolation at the rim.
        double eval_polar(double r, double theta) const {
            const double tj = normalize_angle(theta) / ht - 0.5;
            double jf = std::floor(tj);
            const double ft = tj - jf;
            const std::size_t j0 = static_cast<std::size_t>((static_cast<long long>(jf) %
                                                             static_cast<long long>(nt) + nt)) % nt;
            const std::size_t j1 = (j0 + 1) % nt;
            auto ring = [&](std::size_t i) {
                return (1.0 - ft) * cell(i, j0) + ft * cell(i, j1);
            };
            if (r >= 1.0 - 0.5 * hr) {
                // last ring value plus the known boundary slope
                const double th = normalize_angle(theta);
                const double u1 = ring(nr - 1) +
                                  (r - (static_cast<double>(nr) - 0.5) * hr) *
                                      (boundary_slope ? boundary_slope(th) : 0.0);
                return u1;
            }
            if (r <= 0.5 * hr) {
                // average the innermost ring toward the axis
                double m = 0.0;
                for (std::size_t j = 0; j < nt; ++j) m += cell(0, j);
                m /= static_cast<double>(nt);
                const double w = r / (0.5 * hr);
                return (1.0 - w) * m + w * ring(0);
            }
            const double ri = r / hr - 0.5;
            const std::size_t i0 = std::min<std::size_t>(static_cast<std::size_t>(ri), nr - 2);
            const double fr = ri - static_cast<double>(i0);
            return (1.0 - fr) * ring(i0) + fr * ring(i0 + 1);
        }

        double operator()(Vec2 p) const { return eval_polar(p.norm(), std::atan2(p.y, p.x)); }
        double boundary_value(double theta) const { return eval_polar(1.0, theta); }
    };

    explicit DriftDiskSolver(Potential phi, std::size_t nr = 96, std::size_t nt = 192)
        : phi_(std::move(phi)), nr_(nr), nt_(nt), hr_(1.0 / static_cast<double>(nr)),
          ht_(2.0 * pi / static_cast<double>(nt)) {
        build_and_factor();
        weighted_area_ = disk_integral_adaptive(
            [&](double x, double y) { return std::exp(phi_(Vec2{x, y})); }, 1e-10);
    }

    double weighted_area() const { return weighted_area_; }
    const Potential& potential() const { return phi_; }

    /// Solve div(e^phi grad u) = source with weighted flux e^phi du/dnu =
    /// bflux on the circle (per arclength); returns the zero-mean solution.
    Field solve(const std::function<double(Vec2)>& source,
                const std::function<double(double)>& bflux) const {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nr_ * nt_ + 1);
        double balance = 0.0;
        for (std::size_t i = 0; i < nr_; ++i) {
            const double r = (static_cast<double>(i) + 0.5) * hr_;
            for (std::size_t j = 0; j < nt_; ++j) {
                const double th = (static_cast<double>(j) + 0.5) * ht_;
                // rows sum outward fluxes over interior faces:
                // (A u)_cell = int f dA - g_out on the rim
                const double area = r * hr_ * ht_;
                double v = source(Vec2{r * std::cos(th), r * std::sin(th)}) * area;
                if (i + 1 == nr_) v -= bflux(th) * ht_;
                rhs(i * nt_ + j) = v;
                balance += v;
            }
        }
        // project out the compatibility defect, area-weighted
        const double total_area = pi;
        for (std::size_t i = 0; i < nr_; ++i) {
            const double r = (static_cast<double>(i) + 0.5) * hr_;
            for (std::size_t j = 0; j < nt_; ++j)
                rhs(i * nt_ + j) -= balance * (r * hr_ * ht_) / total_area;
        }
        Eigen::VectorXd u = lu_.solve(rhs);
        if (lu_.info() != Eigen::Success)
            throw DriftSolveFailure("weighted Poisson solve failed");
        Field f;
        f.nr = nr_;
        f.nt = nt_;
        f.hr = hr_;
        f.ht = ht_;
        f.values.assign(u.data(), u.data() + nr_ * nt_);
        auto phi = phi_;
        f.boundary_slope = [phi, bflux](double th) {
            return std::exp(-phi(arc_point(th))) * bflux(th);
        };
        return f;
    }

    /// Drift torsion g^F: div(e^phi grad g) = -e^phi with constant weighted
    /// outflux -(int e^phi)/(2 pi) per arclength.
    Field torsion_field() const {
        const double out = -weighted_area_ / (2.0 * pi);
        return solve([&](Vec2 p) { return -std::exp(phi_(p)); },
                     [out](double) { return out; });
    }

    /// Regular part V of the boundary-source field: the full kernel is
    ///   K(x, z) = V(x) + L(x),  L(x) = -(e^{-phi(z)}/pi) ln|x - z|,
    /// whose weighted flux is delta_z - 1/(2 pi). The log identity
    /// d/dnu ln|x-z| = delta_z(x)... - 1/(2 pi) on the unit circle cancels the
    /// delta, leaving bounded data for V.
    Field kernel_regular_field(double z_angle) const {
        const Vec2 z = arc_point(z_angle);
        const double ephz = std::exp(-phi_(z));
        auto source = [this, z, ephz](Vec2 p) {
            const Vec2 d = p - z;
            const double d2 = d.norm_sq();
            const Vec2 gl = (-ephz / (pi * d2)) * d; // grad L
            const Vec2 gp = phi_.grad(p);
            return -std::exp(phi_(p)) * dot(gp, gl);
        };
        auto phi = phi_;
        const double phz = phi_(z);
        auto bflux = [phi, phz](double th) {
            return (std::exp(phi(arc_point(th)) - phz) - 1.0) / (2.0 * pi);
        };
        return solve(source, bflux);
    }

    /// Full kernel K(x, z) = V(x) + explicit log part.
    static double kernel_value(const Field& v, const Potential& phi, double z_angle, Vec2 x) {
        const Vec2 z = arc_point(z_angle);
        const double d = distance(x, z);
        if (d == 0.0) throw CoincidentPoints("drift kernel at coincident points");
        return v(x) - std::exp(-phi(z)) / pi * std::log(d);
    }

private:
    Potential phi_;
    std::size_t nr_, nt_;
    double hr_, ht_;
    double weighted_area_ = 0.0;
    Eigen::SparseMatrix<double> A_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;

    std::size_t idx(std::size_t i, std::size_t j) const { return i * nt_ + j; }

    void build_and_factor() {
        const std::size_t n = nr_ * nt_;
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(6 * n);
        auto add = [&](std::size_t a, std::size_t b, double v) {
            trip.emplace_back(static_cast<int>(a), static_cast<int>(b), v);
        };
        auto eph = [&](double r, double th) {
            return std::exp(phi_(Vec2{r * std::cos(th), r * std::sin(th)}));
        };
        for (std::size_t i = 0; i < nr_; ++i) {
            for (std::size_t j = 0; j < nt_; ++j) {
                const double th = (static_cast<double>(j) + 0.5) * ht_;
                const std::size_t me = idx(i, j);
                // radial face shared with cell i+1 (interior only)
                if (i + 1 < nr_) {
                    const double R = (static_cast<double>(i) + 1.0) * hr_;
                    const double c = eph(R, th) * R * ht_ / hr_;
                    add(me, me, -c);
                    add(me, idx(i + 1, j), c);
                    add(idx(i + 1, j), idx(i + 1, j), -c);
                    add(idx(i + 1, j), me, c);
                }
                // angular face shared with cell j+1 (periodic)
                const double r = (static_cast<double>(i) + 0.5) * hr_;
                const double thf = (static_cast<double>(j) + 1.0) * ht_;
                const std::size_t nb = idx(i, (j + 1) % nt_);
                const double c = eph(r, thf) * hr_ / (r * ht_);
                add(me, me, -c);
                add(me, nb, c);
                add(nb, nb, -c);
                add(nb, me, c);
            }
        }
        // bordered row/column: area-weighted zero mean
        for (std::size_t i = 0; i < nr_; ++i) {
            const double r = (static_cast<double>(i) + 0.5) * hr_;
            for (std::size_t j = 0; j < nt_; ++j) {
                add(idx(i, j), n, r * hr_ * ht_);
                add(n, idx(i, j), r * hr_ * ht_);
            }
        }
        A_.resize(static_cast<int>(n + 1), static_cast<int>(n + 1));
        A_.setFromTriplets(trip.begin(), trip.end());
        A_.makeCompressed();
        lu_.compute(A_);
        if (lu_.info() != Eigen::Success)
            throw DriftSolveFailure("finite-volume operator factorization failed");
    }
};

} // namespace nesc
