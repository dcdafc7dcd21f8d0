// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace nesc {

inline constexpr double pi = std::numbers::pi;

/// Chebyshev-Gauss nodes t_j = cos(pi (j + 1/2) / m), j = 0..m-1.
/// These are the zeros of T_m and integrate the 1/sqrt(1-t^2) weight exactly.
inline std::vector<double> cheb_gauss_nodes(std::size_t m) {
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j)
        t[j] = std::cos(pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m));
    return t;
}

/// Clenshaw evaluation of sum_n c_n T_n(t).
inline double cheb_eval(std::span<const double> coeffs, double t) {
    if (coeffs.empty()) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        double b0 = 2.0 * t * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + coeffs[0];
}

/// Clenshaw evaluation of sum_n a_n U_n(t) (second kind).
inline double chebU_eval(std::span<const double> coeffs, double t) {
    if (coeffs.empty()) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        double b0 = 2.0 * t * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    // U_1 = 2t U_0, so the standard recurrence step applies down to k = 0.
    return b1;
}

/// Recover Chebyshev coefficients c_0..c_{n-1} from values at the n
/// Chebyshev-Gauss nodes of cheb_gauss_nodes(n) (discrete cosine relations).
inline std::vector<double> cheb_fit(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += values[j] * std::cos(pi * static_cast<double>(k) *
                                      (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        c[k] = 2.0 * s / static_cast<double>(n);
    }
    c[0] *= 0.5;
    return c;
}

/// Coefficients of the derivative: input T-coefficients of psi, output
/// U-coefficients of psi' (T_n' = n U_{n-1}).
inline std::vector<double> cheb_derivative_u(std::span<const double> coeffs) {
    if (coeffs.size() <= 1) return {};
    std::vector<double> u(coeffs.size() - 1);
    for (std::size_t n = 1; n < coeffs.size(); ++n)
        u[n - 1] = static_cast<double>(n) * coeffs[n];
    return u;
}

} // namespace nesc
