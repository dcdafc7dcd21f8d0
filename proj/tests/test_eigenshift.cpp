// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nesc/eigenshift.hpp"

using namespace nesc;

TEST_CASE("leading shift closed form for the constant mode") {
    const DiskKernelProvider prov;
    // u0 = 1/sqrt(pi), so the shift is -1/ln(eps)
    REQUIRE(leading_shift(prov, 1, BoundaryArc(0.0, 0.01)) ==
            Catch::Approx(-1.0 / std::log(0.01)).margin(1e-12));
    REQUIRE(leading_shift(prov, 1, BoundaryArc(0.0, 0.01)) ==
            Catch::Approx(0.217147241).margin(1e-8));
    REQUIRE(leading_shift(prov, 1, BoundaryArc(0.0, 0.001)) ==
            Catch::Approx(0.144764827).margin(1e-8));
}

TEST_CASE("leading shift scales exactly as 1/ln(eps)") {
    const DiskKernelProvider prov;
    const double s1 = leading_shift(prov, 1, BoundaryArc(1.2, 0.01));
    const double s2 = leading_shift(prov, 1, BoundaryArc(1.2, 0.0001));
    REQUIRE(s1 / s2 == Catch::Approx(std::log(0.0001) / std::log(0.01)).margin(1e-12));
}

TEST_CASE("leading shift vanishes at a nodal point of a higher mode") {
    const DiskKernelProvider prov;
    // the (m = 0, k = 2) mode is simple; J0(j'_{0,1}) != 0 on the boundary, so
    // use linearity in |u0(x*)|^2 instead: shift / u0^2 is a pure eps factor
    const auto& table = prov.eigen_table();
    std::size_t j0 = 0;
    for (std::size_t j = 0; j < table.size(); ++j)
        if (table[j].angular_m == 0 && table[j].radial_k == 2) { j0 = j + 1; break; }
    REQUIRE(j0 > 0);
    const BoundaryArc arc(0.7, 0.01);
    const double u = table[j0 - 1].boundary_value(arc.center_angle);
    REQUIRE(leading_shift(prov, j0, arc) ==
            Catch::Approx(-pi / std::log(0.01) * u * u).margin(1e-12));
}

TEST_CASE("degenerate modes refuse") {
    const DiskKernelProvider prov;
    // index 2 is the first (m = 1) pair: a double eigenvalue
    REQUIRE_THROWS_AS(leading_shift(prov, 2, BoundaryArc(0.0, 0.01)), DegenerateEigenvalue);
    REQUIRE_THROWS_AS(corrected_shift(prov, 2, BoundaryArc(0.0, 0.01)), DegenerateEigenvalue);
    REQUIRE_THROWS_AS(leading_shift(prov, 10000, BoundaryArc(0.0, 0.01)), MissingEigenpair);
}

TEST_CASE("corrected shift matches the closed form for the constant mode") {
    const DiskKernelProvider prov;
    // term1 = -1/ln(eps/2), term2 = +1/(8 ln^2(eps/2)); both exact for u0 flat
    for (double eps : {0.05, 0.01, 0.001}) {
        const double l = std::log(0.5 * eps);
        const double closed = -1.0 / l + 1.0 / (8.0 * l * l);
        REQUIRE(corrected_shift(prov, 1, BoundaryArc(0.0, eps)) ==
                Catch::Approx(closed).margin(1e-10));
    }
}

TEST_CASE("corrected shift approaches the leading shift as eps -> 0") {
    const DiskKernelProvider prov;
    double prev = 1e300;
    for (double eps : {1e-2, 1e-4, 1e-8}) {
        const double ratio = corrected_shift(prov, 1, BoundaryArc(0.0, eps)) /
                             leading_shift(prov, 1, BoundaryArc(0.0, eps));
        REQUIRE(std::abs(ratio - 1.0) < std::abs(prev - 1.0) + 1e-14);
        prev = ratio;
    }
}

TEST_CASE("two-term improvement is O(1/ln^2 eps)") {
    const DiskKernelProvider prov;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double c = corrected_shift(prov, 1, BoundaryArc(0.0, eps));
        const double l = leading_shift(prov, 1, BoundaryArc(0.0, eps));
        const double scaled = (c - l) * std::log(eps) * std::log(eps);
        REQUIRE(std::abs(scaled) < 2.0);
    }
}

TEST_CASE("drift shift reductions and gauge invariance") {
    const DiskKernelProvider prov;
    const BoundaryArc arc(0.0, 0.01);
    const double free_shift = leading_shift(prov, 1, arc);
    REQUIRE(drift_leading_shift(prov, 1, arc, zero_potential()) ==
            Catch::Approx(free_shift).margin(1e-15));
    REQUIRE(drift_leading_shift(prov, 1, arc, constant_potential(2.4)) ==
            Catch::Approx(free_shift).margin(1e-15));
    REQUIRE_THROWS_AS(drift_leading_shift(prov, 1, arc, linear_potential(0.3, 0.1)),
                      MissingEigenpair);
    // supplied weighted pair: formula check
    DriftEigenpair pair;
    pair.lambda0 = 0.0;
    pair.value = [](Vec2) { return 0.5; };
    const auto phi = linear_potential(0.3, 0.1);
    const double expect = -pi / std::log(arc.half_length) * 0.25 *
                          std::exp(phi(arc.center_point()));
    REQUIRE(drift_leading_shift(prov, 1, arc, phi, &pair) ==
            Catch::Approx(expect).margin(1e-14));
}
