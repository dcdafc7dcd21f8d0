// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "nesc/interaction.hpp"

using namespace nesc;

TEST_CASE("single-arc cluster reduces to the Carleman inverse") {
    ClusterGeometry g;
    g.n = 1;
    g.offsets = Eigen::MatrixXd::Zero(1, 1);
    const auto sol = solve_cluster(g, 16);
    REQUIRE(sol.alphas.size() == 1);
    REQUIRE(sol.alphas[0] == Catch::Approx(-1.0 / std::log(2.0)).margin(1e-12));
    REQUIRE(sol.residual < 1e-10);
}

TEST_CASE("geometry validation") {
    ClusterGeometry bad = ClusterGeometry::symmetric_pair(1.5);
    REQUIRE_THROWS_AS(bad.validate(), InvalidGap);
    ClusterGeometry skew = ClusterGeometry::symmetric_pair(3.0);
    skew.offsets(0, 1) = -2.9;
    REQUIRE_THROWS_AS(skew.validate(), Error);
    REQUIRE_THROWS_AS(alpha_of_d(2.0), InvalidGap);
}

TEST_CASE("symmetric pair: equal masses and reversal symmetry") {
    const auto sol = solve_cluster(ClusterGeometry::symmetric_pair(3.0), 32);
    REQUIRE(sol.alphas[0] == Catch::Approx(sol.alphas[1]).margin(1e-12));
    const auto& p1 = sol.densities[0].coeffs;
    const auto& p2 = sol.densities[1].coeffs;
    for (std::size_t k = 0; k < p1.size(); ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0; // T_k(-t) = (-1)^k T_k(t)
        REQUIRE(p1[k] == Catch::Approx(sign * p2[k]).margin(1e-12));
    }
}

TEST_CASE("interaction coefficient is positive and decreasing in the gap") {
    std::vector<double> ds = {2.1, 2.5, 4.0, 10.0, 100.0};
    double prev = 1e300;
    for (double d : ds) {
        const double a = alpha_of_d(d);
        REQUIRE(a > 0.0);
        REQUIRE(a < prev);
        prev = a;
    }
    REQUIRE(alpha_of_d(100.0) * std::log(50.0) > 0.95);
    REQUIRE(alpha_of_d(100.0) * std::log(50.0) < 1.05);
    REQUIRE(alpha_of_d(10.0) == Catch::Approx(1.0 / std::log(5.0)).epsilon(0.15));
}

TEST_CASE("continuity in d and cache stability") {
    const double a = alpha_of_d(3.0);
    const double b = alpha_of_d(3.0 + 1e-6);
    REQUIRE(std::abs(a - b) < 1e-4);
    REQUIRE(alpha_of_d(3.0) == a); // cached value identical
}

TEST_CASE("permutation equivariance for three arcs") {
    const std::vector<double> centers = {0.0, 2.6, 8.0};
    const auto sol = solve_cluster(ClusterGeometry::from_scaled_centers(centers), 24);
    const std::vector<double> permuted = {8.0, 0.0, 2.6};
    const auto solp = solve_cluster(ClusterGeometry::from_scaled_centers(permuted), 24);
    REQUIRE(solp.alphas[0] == Catch::Approx(sol.alphas[2]).margin(1e-10));
    REQUIRE(solp.alphas[1] == Catch::Approx(sol.alphas[0]).margin(1e-10));
    REQUIRE(solp.alphas[2] == Catch::Approx(sol.alphas[1]).margin(1e-10));
}

TEST_CASE("system residual on a dense reconstruction grid") {
    const double d = 4.0;
    const auto sol = solve_cluster(ClusterGeometry::symmetric_pair(d), 32);
    // reconstruct L11[phi1] + L12[phi2] at off-collocation points; must be 1
    const auto diag = apply_log_kernel(sol.densities[0]);
    const auto off = apply_shifted_log_kernel(-d, sol.densities[1], +1, 48);
    for (double s = -0.95; s < 1.0; s += 0.19)
        REQUIRE(diag(s) + off(s) == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("pair masses match twice the cached coefficient") {
    const double d = 6.0;
    const auto sol = solve_cluster(ClusterGeometry::symmetric_pair(d), 64);
    REQUIRE(sol.alphas[0] + sol.alphas[1] == Catch::Approx(2.0 * alpha_of_d(d)).margin(1e-12));
    REQUIRE(mass(sol.densities[0]) == Catch::Approx(sol.alphas[0]).margin(1e-14));
}
