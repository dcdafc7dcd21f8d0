// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "nesc/chebyshev.hpp"
#include "nesc/errors.hpp"

namespace nesc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Point on the unit circle at arclength parameter t (radians).
inline Vec2 arc_point(double t) { return {std::cos(t), std::sin(t)}; }

/// Chord length |x(s1) - x(s2)| = 2 |sin((s1 - s2)/2)|.
inline double chord_distance(double s1, double s2) {
    return 2.0 * std::abs(std::sin(0.5 * (s1 - s2)));
}

inline double normalize_angle(double t) {
    t = std::fmod(t, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t;
}

/// An absorbing arc on the unit circle: center angle and arclength half-length.
/// The arc is { (cos t, sin t) : |t - center_angle| < half_length }.
struct BoundaryArc {
    double center_angle;
    double half_length;

    BoundaryArc(double center, double eps)
        : center_angle(normalize_angle(center)), half_length(eps) {}

    Vec2 center_point() const { return arc_point(center_angle); }

    /// Angular distance from angle t to the closed arc (0 if inside).
    double angular_distance(double t) const {
        double d = std::abs(normalize_angle(t) - center_angle);
        d = std::min(d, 2.0 * pi - d);
        return std::max(0.0, d - half_length);
    }

    bool contains_angle(double t) const { return angular_distance(t) == 0.0; }
};

/// Ordered layout of absorbing arcs on the boundary of the unit disk.
struct TargetConfiguration {
    std::vector<BoundaryArc> arcs;

    static constexpr double domain_area = pi;       // |Omega|
    static constexpr double perimeter = 2.0 * pi;   // |dOmega|

    /// Euclidean distance from an interior point to the absorbing set.
    double distance_to_arcs(Vec2 p) const {
        double best = std::numeric_limits<double>::infinity();
        const double th = std::atan2(p.y, p.x);
        for (const auto& a : arcs) {
            double da = a.angular_distance(th);
            // nearest boundary point of the arc as seen from p
            double ta = normalize_angle(th);
            double lo = a.center_angle - a.half_length, hi = a.center_angle + a.half_length;
            double tn;
            if (da == 0.0) {
                tn = ta;
            } else {
                double dlo = std::abs(ta - normalize_angle(lo));
                dlo = std::min(dlo, 2.0 * pi - dlo);
                double dhi = std::abs(ta - normalize_angle(hi));
                dhi = std::min(dhi, 2.0 * pi - dhi);
                tn = (dlo < dhi) ? lo : hi;
            }
            best = std::min(best, distance(p, arc_point(tn)));
        }
        return best;
    }
};

/// Check all TargetConfiguration invariants. Arcs must be nondegenerate,
/// shorter than a half-circle each, and pairwise disjoint as closed arcs.
inline void validate(const TargetConfiguration& config) {
    double total = 0.0;
    for (const auto& a : config.arcs) {
        if (!(a.half_length > 0.0)) throw DegenerateArc("arc half-length must be positive");
        if (!(a.half_length < pi)) throw ArcTooLarge("arc half-length must be below pi");
        total += 2.0 * a.half_length;
    }
    if (total >= TargetConfiguration::perimeter)
        throw ArcTooLarge("total arc length must stay below the perimeter");

    // sort by center and check consecutive angular gaps, including wraparound
    std::vector<BoundaryArc> sorted = config.arcs;
    std::sort(sorted.begin(), sorted.end(),
              [](const BoundaryArc& a, const BoundaryArc& b) {
                  return a.center_angle < b.center_angle;
              });
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; n > 1 && i < n; ++i) {
        const BoundaryArc& a = sorted[i];
        const BoundaryArc& b = sorted[(i + 1) % n];
        double gap = b.center_angle - a.center_angle;
        if (i + 1 == n) gap += 2.0 * pi;
        if (gap <= a.half_length + b.half_length)
            throw OverlappingArcs("closed arcs intersect");
    }
}

} // namespace nesc
