// SPDX-License-Identifier: Apache-2.0
#pragma once

// Drift potentials phi: the force field is F = grad phi. Only smooth
// potentials on the closed disk are supported; the library ships the two
// families the CLI understands (none / affine) plus a generic functional
// constructor for tests.

#include <cmath>
#include <functional>
#include <utility>

#include "nesc/geometry.hpp"

namespace nesc {

struct Potential {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> gradient;
    bool is_constant = false;

    double operator()(Vec2 p) const { return value(p); }
    Vec2 grad(Vec2 p) const { return gradient(p); }
};

inline Potential zero_potential() {
    Potential p;
    p.value = [](Vec2) { return 0.0; };
    p.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    p.is_constant = true;
    return p;
}

inline Potential constant_potential(double c) {
    Potential p;
    p.value = [c](Vec2) { return c; };
    p.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    p.is_constant = true;
    return p;
}

/// phi(x, y) = a x + b y + c.
inline Potential linear_potential(double a, double b, double c = 0.0) {
    Potential p;
    p.value = [a, b, c](Vec2 q) { return a * q.x + b * q.y + c; };
    p.gradient = [a, b](Vec2) { return Vec2{a, b}; };
    p.is_constant = (a == 0.0 && b == 0.0);
    return p;
}

inline Potential make_potential(std::function<double(Vec2)> value,
                                std::function<Vec2(Vec2)> gradient) {
    Potential p;
    p.value = std::move(value);
    p.gradient = std::move(gradient);
    return p;
}

} // namespace nesc
