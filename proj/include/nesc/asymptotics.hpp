// SPDX-License-Identifier: Apache-2.0
#pragma once

// Mean escape time expansions on the unit disk: one target, two separated
// targets, clustered targets, and the leading order with drift. Each result
// carries the epsilon-dependent constant block, a spatial corrector field,
// a symbolic remainder tag, and the named constants the direct solver can be
// compared against.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nesc/geometry.hpp"
#include "nesc/interaction.hpp"
#include "nesc/potential.hpp"
#include "nesc/quadrature.hpp"

namespace nesc {

struct ExpansionResult {
    double leading_constant = 0.0;
    std::function<double(Vec2)> spatial_part;
    std::string remainder_order;
    std::map<std::string, double> constants;
    bool corrector_pending = false; // drift case: spatial part needs the direct solver

    double evaluate(Vec2 x) const {
        return leading_constant + (spatial_part ? spatial_part(x) : 0.0);
    }
};

/// Flux density through one arc: amplitude / sqrt(eps^2 - t^2) at arc
/// parameter t, plus a correction-order tag.
struct FluxDensity {
    BoundaryArc arc;
    double amplitude = 0.0;
    std::string correction_order;

    double operator()(double t) const {
        return amplitude / std::sqrt(arc.half_length * arc.half_length - t * t);
    }
    double mass() const { return amplitude * pi; }
};

namespace detail {
inline void require_valid_probe(const TargetConfiguration& config, Vec2 x) {
    double eps_max = 0.0;
    for (const auto& a : config.arcs) eps_max = std::max(eps_max, a.half_length);
    if (config.distance_to_arcs(x) < 10.0 * eps_max)
        throw TooCloseToArc("probe point inside the 10 eps validity margin");
}

/// Angle of b relative to a, unwrapped to (-pi, pi].
inline double relative_angle(double a, double b) {
    double d = std::fmod(b - a, 2.0 * pi);
    if (d <= -pi) d += 2.0 * pi;
    if (d > pi) d -= 2.0 * pi;
    return d;
}
} // namespace detail

/// u_eps(x) = ln(2/eps) + (1-|x|^2)/4 + ln|x - x*| + O(eps), one arc.
inline ExpansionResult single_target(const TargetConfiguration& config, Vec2 x) {
    validate(config);
    if (config.arcs.size() != 1) throw Error("single_target requires exactly one arc");
    detail::require_valid_probe(config, x);
    const BoundaryArc arc = config.arcs.front();
    const double eps = arc.half_length;
    const Vec2 xs = arc.center_point();

    ExpansionResult r;
    r.leading_constant = std::log(2.0 / eps);
    r.spatial_part = [xs](Vec2 p) {
        return 0.25 * (1.0 - p.norm_sq()) + std::log(distance(p, xs));
    };
    r.remainder_order = "O(eps)";
    r.constants["C_eps"] = std::log(2.0 / eps);
    return r;
}

/// Leading flux profile through the single arc: -(|Omega|/pi)/sqrt(eps^2-t^2).
inline FluxDensity single_target_flux(const TargetConfiguration& config) {
    validate(config);
    if (config.arcs.size() != 1) throw Error("single_target_flux requires exactly one arc");
    FluxDensity f{config.arcs.front(), -TargetConfiguration::domain_area / pi, "O(eps)"};
    return f;
}

/// Two well-separated arcs (chord L bounded below), possibly different sizes.
inline ExpansionResult two_separated(const TargetConfiguration& config, Vec2 x) {
    validate(config);
    if (config.arcs.size() != 2) throw Error("two_separated requires exactly two arcs");
    detail::require_valid_probe(config, x);
    const BoundaryArc a1 = config.arcs[0], a2 = config.arcs[1];
    const double e1 = a1.half_length, e2 = a2.half_length;
    const double L = chord_distance(a1.center_angle, a2.center_angle);
    const double D = std::log(e1 * e2 / (4.0 * L * L));
    if (D == 0.0) throw DegenerateSystem("two-target constant system is singular");
    const double C1 = -std::log(e2 / (2.0 * L)) / D;
    const double C2 = -std::log(e1 / (2.0 * L)) / D;
    const double K =
        (std::log(L) * std::log(L) - std::log(0.5 * e1) * std::log(0.5 * e2)) / D;
    const Vec2 x1 = a1.center_point(), x2 = a2.center_point();

    ExpansionResult r;
    r.leading_constant = K;
    r.spatial_part = [C1, C2, x1, x2](Vec2 p) {
        return 0.25 * (1.0 - p.norm_sq()) - C1 * std::log(distance(p, x1)) -
               C2 * std::log(distance(p, x2));
    };
    r.remainder_order = "O(sqrt(eps1^2+eps2^2))";
    r.constants["C_eps"] = K;
    r.constants["C1"] = C1;
    r.constants["C2"] = C2;
    r.constants["L"] = L;
    return r;
}

/// Two equal arcs a scaled gap d = |s1 - s2|/eps > 2 apart (clustered regime).
inline ExpansionResult two_clustered(const TargetConfiguration& config, Vec2 x) {
    validate(config);
    if (config.arcs.size() != 2) throw Error("two_clustered requires exactly two arcs");
    const BoundaryArc a1 = config.arcs[0], a2 = config.arcs[1];
    const double eps = a1.half_length;
    if (a2.half_length != eps) throw Error("two_clustered requires equal arc sizes");
    detail::require_valid_probe(config, x);
    double ds = std::abs(a1.center_angle - a2.center_angle);
    ds = std::min(ds, 2.0 * pi - ds);
    const double d = ds / eps;
    if (d <= 2.0) throw InvalidGap("cluster gap d must exceed 2");
    const double alpha = alpha_of_d(d);
    const Vec2 x1 = a1.center_point(), x2 = a2.center_point();

    ExpansionResult r;
    r.leading_constant = std::log(1.0 / eps) - 0.5 / alpha;
    r.spatial_part = [x1, x2](Vec2 p) {
        return 0.25 * (1.0 - p.norm_sq()) +
               0.5 * (std::log(distance(p, x1)) + std::log(distance(p, x2)));
    };
    r.remainder_order = "O(eps)";
    r.constants["alpha"] = alpha;
    r.constants["d"] = d;
    r.constants["C_eps"] = r.leading_constant;
    return r;
}

/// n equal arcs with pairwise scaled gaps > 2:
/// u(x) = -ln eps - 1/(alpha_1+...+alpha_n) + (1/n) sum Phi(x, x_i) + O(eps).
inline ExpansionResult multi_cluster(const TargetConfiguration& config, Vec2 x,
                                     std::size_t N = 64) {
    validate(config);
    const std::size_t n = config.arcs.size();
    if (n < 1) throw Error("multi_cluster requires at least one arc");
    const double eps = config.arcs.front().half_length;
    std::vector<double> centers;
    const double base = config.arcs.front().center_angle;
    for (const auto& a : config.arcs) {
        if (a.half_length != eps) throw Error("multi_cluster requires equal arc sizes");
        centers.push_back(detail::relative_angle(base, a.center_angle) / eps);
    }
    detail::require_valid_probe(config, x);
    auto sol = solve_cluster(ClusterGeometry::from_scaled_centers(centers), N);
    double alpha_sum = 0.0;
    for (double a : sol.alphas) alpha_sum += a;
    std::vector<Vec2> pts;
    for (const auto& a : config.arcs) pts.push_back(a.center_point());

    ExpansionResult r;
    r.leading_constant = -std::log(eps) - 1.0 / alpha_sum;
    r.spatial_part = [pts](Vec2 p) {
        double s = 0.0;
        for (const auto& q : pts)
            s += std::log(distance(p, q)) + 0.25 * (1.0 - p.norm_sq());
        return s / static_cast<double>(pts.size());
    };
    r.remainder_order = "O(eps)";
    r.constants["alpha_sum"] = alpha_sum;
    for (std::size_t i = 0; i < n; ++i)
        r.constants["alpha_" + std::to_string(i + 1)] = sol.alphas[i];
    r.constants["C_eps"] = r.leading_constant;
    return r;
}

/// Leading order with drift F = grad phi:
///   u(x) ~ (1/pi) (int_Omega e^{phi(z) - phi(x*)} dz) ln(2/eps) + Phi^F(x),
/// with the corrector only available through the direct solver.
inline ExpansionResult drift_single_target(const TargetConfiguration& config,
                                           const Potential& phi, Vec2 x) {
    validate(config);
    if (config.arcs.size() != 1) throw Error("drift_single_target requires exactly one arc");
    detail::require_valid_probe(config, x);
    const BoundaryArc arc = config.arcs.front();
    const double eps = arc.half_length;
    const Vec2 xs = arc.center_point();
    const double phis = phi(xs);
    const double weighted_area =
        disk_integral_adaptive([&](double px, double py) {
            return std::exp(phi(Vec2{px, py}) - phis);
        });

    ExpansionResult r;
    r.leading_constant = (weighted_area / pi) * std::log(2.0 / eps);
    r.spatial_part = [](Vec2) { return 0.0; };
    r.remainder_order = "O(1)";
    r.corrector_pending = true;
    r.constants["weighted_area"] = weighted_area;
    r.constants["C_eps"] = r.leading_constant;
    return r;
}

} // namespace nesc
