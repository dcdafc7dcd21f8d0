// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bessel J_m and modified I_m by ascending series / backward (Miller)
// recurrence. Self-contained on purpose; tests cross-check against the
// C++17 special functions.

#include <cmath>
#include <cstddef>
#include <vector>

#include "nesc/errors.hpp"

namespace nesc {

/// J_0(x) .. J_mmax(x) by Miller's backward recurrence with the
/// J_0 + 2 sum J_{2k} = 1 normalization.
inline std::vector<double> bessel_j_array(double x, std::size_t mmax) {
    std::vector<double> out(mmax + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double ax = std::abs(x);
    std::size_t start = mmax + 16 +
        static_cast<std::size_t>(ax + 12.0 * std::sqrt(std::max(1.0, ax)));
    std::vector<double> j(start + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = 1e-300;
    for (std::size_t k = start; k-- > 0;) {
        j[k] = (2.0 * static_cast<double>(k + 1) / ax) * j[k + 1] - j[k + 2];
        if (std::abs(j[k]) > 1e280) {
            for (std::size_t i = k; i < j.size(); ++i) j[i] *= 1e-280;
        }
    }
    double norm = j[0];
    for (std::size_t k = 2; k < j.size(); k += 2) norm += 2.0 * j[k];
    for (std::size_t m = 0; m <= mmax && m < j.size(); ++m) out[m] = j[m] / norm;
    if (x < 0.0)
        for (std::size_t m = 1; m <= mmax; m += 2) out[m] = -out[m];
    return out;
}

/// I_0(x) .. I_mmax(x), x > 0, normalized by I_0 + 2 sum_k I_k = e^x.
inline std::vector<double> bessel_i_array(double x, std::size_t mmax) {
    std::vector<double> out(mmax + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    std::size_t start = mmax + 16 +
        static_cast<std::size_t>(x + 12.0 * std::sqrt(std::max(1.0, x)));
    std::vector<double> v(start + 2, 0.0);
    v[start + 1] = 0.0;
    v[start] = 1e-300;
    for (std::size_t k = start; k-- > 0;) {
        v[k] = v[k + 2] + (2.0 * static_cast<double>(k + 1) / x) * v[k + 1];
        if (std::abs(v[k]) > 1e280) {
            for (std::size_t i = k; i < v.size(); ++i) v[i] *= 1e-280;
        }
    }
    double norm = v[0];
    for (std::size_t k = 1; k < v.size(); ++k) norm += 2.0 * v[k];
    const double scale = std::exp(x);
    // guard against overflow of e^x for large x; x stays modest here
    for (std::size_t m = 0; m <= mmax && m < v.size(); ++m) out[m] = v[m] / norm * scale;
    return out;
}

inline double bessel_j(std::size_t m, double x) { return bessel_j_array(x, m)[m]; }

/// J_m'(x) from the recurrence; J_0' = -J_1.
inline double bessel_j_prime(std::size_t m, double x) {
    auto j = bessel_j_array(x, m + 1);
    if (m == 0) return -j[1];
    return 0.5 * (j[m - 1] - j[m + 1]);
}

/// k-th positive zero of J_m' (the frequencies of disk Neumann modes).
/// m = 0 convention here: returns the k-th positive zero of J_0' = -J_1.
inline double bessel_j_prime_zero(std::size_t m, std::size_t k) {
    // scan for sign changes of Jm' on a fine grid, then bisect + Newton
    double lo = (m == 0) ? 2.0 : std::max(1e-3, static_cast<double>(m));
    const double step = 0.05;
    std::size_t found = 0;
    double fprev = bessel_j_prime(m, lo);
    for (double x = lo + step; x < lo + 40.0 + 4.0 * static_cast<double>(m + k); x += step) {
        double fcur = bessel_j_prime(m, x);
        if ((fprev < 0.0) != (fcur < 0.0)) {
            ++found;
            if (found == k) {
                double a = x - step, b = x;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (a + b);
                    double fm = bessel_j_prime(m, mid);
                    if ((fm < 0.0) == (fprev < 0.0)) a = mid; else b = mid;
                    if (b - a < 1e-12) break;
                }
                double z = 0.5 * (a + b);
                // Newton polish: Jm'' = ((m^2/x^2) - 1) Jm - Jm'/x
                for (int it = 0; it < 8; ++it) {
                    auto j = bessel_j_array(z, m + 1);
                    double jp = (m == 0) ? -j[1] : 0.5 * (j[m - 1] - j[m + 1]);
                    double jpp = ((static_cast<double>(m * m) / (z * z)) - 1.0) * j[m] - jp / z;
                    double dz = jp / jpp;
                    z -= dz;
                    if (std::abs(dz) < 1e-15) break;
                }
                if (std::abs(bessel_j_prime(m, z)) > 1e-12)
                    throw RootFindFailure("Bessel derivative zero did not refine");
                return z;
            }
        }
        fprev = fcur;
    }
    throw RootFindFailure("Bessel derivative zero not bracketed");
}

} // namespace nesc
