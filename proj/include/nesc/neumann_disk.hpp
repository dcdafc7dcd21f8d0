// SPDX-License-Identifier: Apache-2.0
#pragma once

// Neumann-type kernels on the unit disk.
//
// The free boundary Neumann function is closed-form: N(x,z) = -(1/pi) ln|x-z|
// with vanishing regular part; the torsion function is (1-|x|^2)/4. The
// frequency-dependent kernel N^w for (Laplacian + w^2) is evaluated per
// angular Fourier mode, where the radial eigenfunction sum collapses to the
// closed form J_m(w r) / (pi_m w J_m'(w)); the log singularity is split off
// analytically so the remaining angular series converges fast. The raw
// doubly-truncated eigenfunction sum is kept as a test oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nesc/bessel.hpp"
#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"

namespace nesc {

/// One Neumann eigenpair of the disk: -Laplace u = lambda u, du/dnu = 0.
/// lambda = (j'_{m,k})^2; the (m=0, k=1) entry is the constant mode lambda = 0.
struct NeumannEigenpair {
    enum class Parity { Cos, Sin };

    int angular_m = 0;
    int radial_k = 1;
    Parity parity = Parity::Cos;
    double frequency = 0.0;   // j'_{m,k}; 0 for the constant mode
    double lambda = 0.0;      // frequency^2
    double norm_c = 0.0;      // L2(disk) normalization constant

    double value(Vec2 p) const {
        const double r = p.norm();
        double radial = (frequency == 0.0)
                            ? 1.0
                            : bessel_j(static_cast<std::size_t>(angular_m), frequency * r);
        if (angular_m == 0) return norm_c * radial;
        const double th = std::atan2(p.y, p.x);
        const double ang = (parity == Parity::Cos) ? std::cos(angular_m * th)
                                                   : std::sin(angular_m * th);
        return norm_c * radial * ang;
    }

    double boundary_value(double theta) const { return value(arc_point(theta)); }
};

/// First `count` Neumann eigenpairs of the unit disk, sorted by eigenvalue
/// (ties by angular index, cos before sin).
inline std::vector<NeumannEigenpair> neumann_eigenpairs(std::size_t count) {
    if (count < 1) throw Error("eigenpair count must be >= 1");
    std::vector<NeumannEigenpair> table;
    double cap = 30.0;
    while (true) {
        table.clear();
        // m = 0 family: constant mode, then zeros of J0' = -J1
        NeumannEigenpair c0;
        c0.norm_c = 1.0 / std::sqrt(pi);
        table.push_back(c0);
        for (std::size_t k = 1;; ++k) {
            double z = bessel_j_prime_zero(0, k);
            if (z * z > cap) break;
            NeumannEigenpair e;
            e.angular_m = 0;
            e.radial_k = static_cast<int>(k + 1);
            e.frequency = z;
            e.lambda = z * z;
            e.norm_c = 1.0 / (std::sqrt(pi) * std::abs(bessel_j(0, z)));
            table.push_back(e);
        }
        for (std::size_t m = 1; static_cast<double>(m * m) <= cap; ++m) {
            for (std::size_t k = 1;; ++k) {
                double z = bessel_j_prime_zero(m, k);
                if (z * z > cap) break;
                const double jm = bessel_j(m, z);
                const double c = std::sqrt(2.0 / pi) /
                                 (std::abs(jm) * std::sqrt(1.0 - static_cast<double>(m * m) / (z * z)));
                for (auto parity : {NeumannEigenpair::Parity::Cos, NeumannEigenpair::Parity::Sin}) {
                    NeumannEigenpair e;
                    e.angular_m = static_cast<int>(m);
                    e.radial_k = static_cast<int>(k);
                    e.parity = parity;
                    e.frequency = z;
                    e.lambda = z * z;
                    e.norm_c = c;
                    table.push_back(e);
                }
            }
        }
        if (table.size() >= count) break;
        cap *= 2.0;
    }
    std::stable_sort(table.begin(), table.end(),
                     [](const NeumannEigenpair& a, const NeumannEigenpair& b) {
                         if (a.lambda != b.lambda) return a.lambda < b.lambda;
                         if (a.angular_m != b.angular_m) return a.angular_m < b.angular_m;
                         return a.parity == NeumannEigenpair::Parity::Cos &&
                                b.parity == NeumannEigenpair::Parity::Sin;
                     });
    table.resize(count);
    return table;
}

namespace detail {

/// J route (sign = -1) or I route (sign = +1) ratio  B_m(a r)/(a B_m'(a))
/// with B = J or I, computed from the ascending series (valid once
/// (a/2)^2/(m+1) is comfortably below 1). The (a/2)^m prefactors cancel.
inline double mode_ratio_series(std::size_t m, double q_signed, double r) {
    // q_signed = sign * (a/2)^2; series terms accumulate factor q/(k(m+k))
    double num_term = std::pow(r, static_cast<double>(m));
    double num = num_term;
    double den_term = 1.0;
    double den = static_cast<double>(m) * den_term;
    const double r2 = r * r;
    for (std::size_t k = 1; k < 64; ++k) {
        const double f = q_signed / (static_cast<double>(k) * static_cast<double>(m + k));
        num_term *= f * r2;
        den_term *= f;
        num += num_term;
        den += static_cast<double>(m + 2 * k) * den_term;
        if (std::abs(num_term) < 1e-18 * std::abs(num) &&
            std::abs(den_term * static_cast<double>(m + 2 * k)) < 1e-18 * std::abs(den))
            break;
    }
    return num / den;
}

} // namespace detail

/// Closed-form and series Neumann kernels on the unit disk.
class DiskKernelProvider {
public:
    struct Config {
        int m_angular = 32;    // minimum angular modes retained
        int k_radial = 64;     // radial depth of the retained eigenpair table
        double resonance_rel_tol = 1e-8;
    };

    DiskKernelProvider() : DiskKernelProvider(Config{}) {}
    explicit DiskKernelProvider(Config cfg) : cfg_(cfg) {
        table_ = neumann_eigenpairs(static_cast<std::size_t>(
            std::max(8, cfg_.m_angular + cfg_.k_radial)));
    }

    const Config& config() const { return cfg_; }
    const std::vector<NeumannEigenpair>& eigen_table() const { return table_; }

    /// Free boundary Neumann function: -(1/pi) ln|x-z|; regular part is 0.
    static double boundary_kernel(Vec2 x, Vec2 z) {
        const double d = distance(x, z);
        if (d == 0.0) throw CoincidentPoints("boundary kernel at coincident points");
        return -std::log(d) / pi;
    }

    /// Torsion function g(x) = (1-|x|^2)/4; Delta g = -1, dg/dnu = -1/2.
    static double torsion(Vec2 x) { return 0.25 * (1.0 - x.norm_sq()); }

    /// Dipole corrector Phi(x, x*) = ln|x-x*| + (1-|x|^2)/4.
    static double corrector(Vec2 x, Vec2 x_star) {
        const double d = distance(x, x_star);
        if (d == 0.0) throw CoincidentPoints("corrector at coincident points");
        return std::log(d) + torsion(x);
    }

    /// Homogenized corrector v(x): boundary average of Phi(x, .), which on
    /// the disk reduces to the torsion function (the log averages to zero).
    static double homogenized_corrector(Vec2 x) { return torsion(x); }

    /// Frequency-dependent boundary kernel N^w(x, z), z on the unit circle,
    /// omega_sq = w^2 (may be negative: modified-Bessel route).
    double modified_boundary_kernel(double omega_sq, Vec2 x, Vec2 z) const {
        check_resonance(omega_sq);
        return log_part(x, z) + mode0_term(omega_sq, x.norm()) +
               angular_sum(omega_sq, x, z);
    }

    /// Kernel with the log part removed, both arguments on the unit circle,
    /// as a function of the angle between them. Finite for dtheta != 0.
    double boundary_smooth_remainder(double omega_sq, double dtheta) const {
        check_resonance(omega_sq);
        return mode0_term(omega_sq, 1.0) + boundary_mode_sum(omega_sq, dtheta);
    }

    /// Holomorphic remainder R^w(x,z): the kernel minus the log part and the
    /// rank-one pole of eigenpair j0 (1-based index into the sorted table).
    /// Only radially symmetric (m = 0) pairs are supported; disk m >= 1
    /// eigenvalues are double and their splitting is out of scope.
    double regular_part(double omega_sq, std::size_t j0, Vec2 x, Vec2 z) const {
        const NeumannEigenpair& pair = pair_at(j0);
        if (pair.angular_m != 0)
            throw DegenerateEigenvalue("regular part only defined for simple (m = 0) modes");
        const double r = x.norm();
        double m0reg;
        if (pair.lambda == 0.0) {
            m0reg = mode0_regular_at_zero(omega_sq, r);
        } else if (std::abs(pair.lambda - omega_sq) >
                   0.05 * (1.0 + std::abs(pair.lambda))) {
            m0reg = mode0_term(omega_sq, r) - pole_term(pair, x, z, omega_sq);
        } else {
            // straddle the pole symmetrically; odd part of the error cancels
            const double delta = 1e-3 * (1.0 + std::abs(pair.lambda));
            const double a = mode0_term(omega_sq - delta, r) - pole_term(pair, x, z, omega_sq - delta);
            const double b = mode0_term(omega_sq + delta, r) - pole_term(pair, x, z, omega_sq + delta);
            m0reg = 0.5 * (a + b);
        }
        return m0reg + angular_sum(omega_sq, x, z);
    }

private:
    Config cfg_;
    std::vector<NeumannEigenpair> table_;

    const NeumannEigenpair& pair_at(std::size_t j0) const {
        if (j0 < 1 || j0 > table_.size()) throw MissingEigenpair("eigenpair index out of table");
        return table_[j0 - 1];
    }

    void check_resonance(double omega_sq) const {
        for (const auto& e : table_) {
            if (e.lambda > omega_sq + 1.0) break;
            if (std::abs(e.lambda - omega_sq) < cfg_.resonance_rel_tol * (1.0 + std::abs(omega_sq)))
                throw ResonantFrequency("omega^2 too close to a retained Neumann eigenvalue");
        }
        if (omega_sq > 80.0)
            throw Error("frequency out of the supported range (omega^2 <= 80)");
    }

    static double log_part(Vec2 x, Vec2 z) {
        const double d = distance(x, z);
        if (d == 0.0) throw CoincidentPoints("modified kernel at coincident points");
        return -std::log(d) / pi;
    }

    static double pole_term(const NeumannEigenpair& pair, Vec2 x, Vec2 z, double omega_sq) {
        return pair.value(x) * pair.value(z) / (pair.lambda - omega_sq);
    }

    /// Angular m = 0 contribution A_0 B_0(a r): carries the lambda = 0 pole.
    static double mode0_term(double omega_sq, double r) {
        if (omega_sq > 0.0) {
            const double w = std::sqrt(omega_sq);
            auto j = bessel_j_array(w, 1);
            auto jr = bessel_j_array(w * r, 0);
            return -jr[0] / (2.0 * pi * w * j[1]);
        }
        const double kp = std::sqrt(-omega_sq);
        auto iv = bessel_i_array(kp, 1);
        auto ir = bessel_i_array(kp * r, 0);
        return ir[0] / (2.0 * pi * kp * iv[1]);
    }

    /// mode0_term with the constant-mode pole  -1/(pi w^2)  removed,
    /// stable through omega_sq -> 0 via the cancellation series.
    static double mode0_regular_at_zero(double omega_sq, double r) {
        if (std::abs(omega_sq) >= 0.25)
            return mode0_term(omega_sq, r) + 1.0 / (pi * omega_sq);
        const double q = 0.25 * omega_sq;   // (w/2)^2, sign included
        // g = sum_k (-q)^k / (k!(k+1)!),  f = J_0(w r) = sum_k (-q r^2)^k/(k!)^2
        // and the regular part is  (g - f) / (4 pi q g)  with (g-f)/q in series.
        double g = 1.0;
        double diff = 0.0;
        double a = 1.0, b = 1.0; // running coefficient magnitudes for g and f
        const double r2 = r * r;
        for (std::size_t k = 1; k < 40; ++k) {
            a /= static_cast<double>(k) * static_cast<double>(k + 1);
            b /= static_cast<double>(k) * static_cast<double>(k);
            const double gterm = std::pow(-q, static_cast<double>(k)) * a;
            g += gterm;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            // ((g-f)/q) term at order k: sign * q^{k-1} (a - b r^{2k})
            diff += sign * std::pow(q, static_cast<double>(k - 1)) *
                    (a - b * std::pow(r2, static_cast<double>(k)));
            if (std::abs(gterm) < 1e-18 && k > 3) break;
        }
        return diff / (4.0 * pi * g);
    }

    /// Single mode m >= 1 of the log-removed kernel at radius r:
    ///   bracket_m(r) = B_m(a r)/(pi a B_m'(a)) - r^m/(pi m),
    /// with B = J (omega_sq > 0, qs = -(a/2)^2 < 0) or I (qs > 0).
    static double mode_bracket(std::size_t m, double r, double qs, bool jroute,
                               const std::vector<double>& bw,
                               const std::vector<double>& br, double a) {
        double ratio;
        const bool series_ok = std::abs(qs) / static_cast<double>(m + 1) < 0.5;
        if (m + 1 < bw.size() && m < br.size() && !series_ok) {
            double bprime; // a B_m'(a)
            if (jroute)
                bprime = a * 0.5 * (bw[m - 1] - bw[m + 1]);
            else
                bprime = a * 0.5 * (bw[m - 1] + bw[m + 1]);
            ratio = br[m] / bprime;
        } else {
            ratio = detail::mode_ratio_series(m, qs, r);
        }
        return ratio / pi -
               std::pow(r, static_cast<double>(m)) / (pi * static_cast<double>(m));
    }

    double angular_sum(double omega_sq, Vec2 x, Vec2 z) const {
        const double r = x.norm();
        if (r > 1.0 - 1e-12) {
            const double dth = std::atan2(x.y, x.x) - std::atan2(z.y, z.x);
            return boundary_mode_sum(omega_sq, dth);
        }
        return angular_series(omega_sq, x, z);
    }

    /// Both points on the circle: bracket_m ~ omega_sq/(2 pi m^2 (m+1)), so
    /// sum the deviation from that law (O(m^-5)) to m = 512 and add the
    /// asymptotic tail in closed form:
    ///   sum cos(m t)/m            = -ln(2 |sin(t/2)|)
    ///   sum cos(m t)/m^2          = pi^2/6 - pi t/2 + t^2/4     (0 <= t <= 2 pi)
    ///   sum_{m>=1} cos(m t)/(m+1) = Re[-e^{-it} ln(1 - e^{it})] - 1
    /// combined through 1/(m^2(m+1)) = 1/m^2 - 1/m + 1/(m+1).
    static double boundary_mode_sum(double omega_sq, double dtheta) {
        const bool jroute = omega_sq > 0.0;
        const double a = std::sqrt(std::abs(omega_sq));
        const double qs = -0.25 * omega_sq;
        const std::size_t m_direct = 32;
        std::vector<double> bw;
        if (jroute)
            bw = bessel_j_array(a, m_direct + 1);
        else
            bw = bessel_i_array(a, m_direct + 1);

        double t = normalize_angle(dtheta);
        const double c = omega_sq / (2.0 * pi);
        const std::size_t M = 512;
        double sum = 0.0;
        for (std::size_t m = 1; m <= M; ++m) {
            const double asym = c / (static_cast<double>(m) * static_cast<double>(m) *
                                     static_cast<double>(m + 1));
            const double b = mode_bracket(m, 1.0, qs, jroute, bw, bw, a);
            sum += (b - asym) * std::cos(static_cast<double>(m) * t);
        }
        // closed-form full tail of the asymptotic law, all m >= 1
        const double q2 = pi * pi / 6.0 - 0.5 * pi * t + 0.25 * t * t;
        const double half_sin = std::abs(std::sin(0.5 * t));
        if (half_sin < 1e-15) return sum + c * (q2 - 1.0); // t -> 0 limit of the rest
        const double s = std::sin(t), co = std::cos(t);
        // ln(1 - e^{it}) = ln(2 sin(t/2)) + i (t - pi)/2  for t in (0, 2 pi)
        const double lre = std::log(2.0 * half_sin);
        const double q1 = -lre;
        const double lim = 0.5 * (t - pi);
        const double q1s = -(co * lre + s * lim) - 1.0;
        sum += c * (q2 - q1 + q1s);
        return sum;
    }

    /// Sum over m >= 1 of [A_m B_m(a r) - r^m/(pi m)] cos(m dtheta): the
    /// kernel with the log singularity already removed. Interior x only
    /// (geometric decay in r); boundary points route to boundary_mode_sum.
    double angular_series(double omega_sq, Vec2 x, Vec2 z) const {
        const double r = std::min(1.0, x.norm());
        const double dth = std::atan2(x.y, x.x) - std::atan2(z.y, z.x);
        const bool jroute = omega_sq > 0.0;
        const double a = std::sqrt(std::abs(omega_sq));
        // signed series parameter: -(a/2)^2 on the J route, +(a/2)^2 on the I
        // route; both equal -omega_sq/4
        const double qs = -0.25 * omega_sq;

        const std::size_t m_direct = 32;
        std::vector<double> bw, br;
        if (jroute) {
            bw = bessel_j_array(a, m_direct + 1);
            br = bessel_j_array(a * r, m_direct);
        } else {
            bw = bessel_i_array(a, m_direct + 1);
            br = bessel_i_array(a * r, m_direct);
        }

        double sum = 0.0;
        std::size_t consecutive_small = 0;
        const std::size_t m_cap = 200000;
        const std::size_t m_min = static_cast<std::size_t>(std::max(1, cfg_.m_angular));
        for (std::size_t m = 1; m <= m_cap; ++m) {
            double ratio;
            bool series_ok = std::abs(qs) / static_cast<double>(m + 1) < 0.5;
            if (m < m_direct && !series_ok) {
                double bprime; // a B_m'(a)
                if (jroute)
                    bprime = a * 0.5 * (bw[m - 1] - bw[m + 1]);
                else
                    bprime = a * 0.5 * (bw[m - 1] + bw[m + 1]);
                ratio = br[m] / bprime;
            } else {
                ratio = detail::mode_ratio_series(m, qs, r);
            }
            const double bracket = ratio / pi -
                std::pow(r, static_cast<double>(m)) / (pi * static_cast<double>(m));
            sum += bracket * std::cos(static_cast<double>(m) * dth);
            if (std::abs(bracket) < 1e-16) {
                if (++consecutive_small > 4 && m >= m_min) break;
            } else {
                consecutive_small = 0;
            }
        }
        return sum;
    }
};

} // namespace nesc
