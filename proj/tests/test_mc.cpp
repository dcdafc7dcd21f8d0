// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>

#include "nesc/direct_solver.hpp"
#include "nesc/monte_carlo.hpp"

using namespace nesc;

TEST_CASE("guards: step size, trial count, start point") {
    TargetConfiguration cfg{{BoundaryArc(0.0, 0.1)}};
    const Vec2 c{0.0, 0.0};
    REQUIRE_THROWS_AS(mc_escape(c, cfg, std::nullopt, 2e-3, 1000, 1), StepTooLarge);
    // h must also resolve the window: eps^2/4 = 2.5e-3 for eps = 0.1, but a
    // smaller arc tightens the guard
    TargetConfiguration tiny{{BoundaryArc(0.0, 0.01)}};
    REQUIRE_THROWS_AS(mc_escape(c, tiny, std::nullopt, 1e-3, 1000, 1), StepTooLarge);
    REQUIRE_THROWS_AS(mc_escape(c, cfg, std::nullopt, 1e-3, 10, 1), Error);
    REQUIRE_THROWS_AS(mc_escape({1.0, 0.0}, cfg, std::nullopt, 1e-3, 1000, 1), Error);
}

TEST_CASE("deterministic replay is bit-exact") {
    TargetConfiguration cfg{{BoundaryArc(0.0, 0.3)}};
    const auto a = mc_escape({0.0, 0.0}, cfg, std::nullopt, 1e-3, 1000, 42);
    const auto b = mc_escape({0.0, 0.0}, cfg, std::nullopt, 1e-3, 1000, 42);
    REQUIRE(a.mean == b.mean);
    REQUIRE(a.stderr_ == b.stderr_);
    const auto other = mc_escape({0.0, 0.0}, cfg, std::nullopt, 1e-3, 1000, 43);
    REQUIRE(a.mean != other.mean);
}

TEST_CASE("estimate agrees with the direct solver within the error budget") {
    const double eps = 0.3, h = 1e-3;
    TargetConfiguration cfg{{BoundaryArc(0.0, eps)}};
    const auto direct = solve_direct(cfg);
    const auto est = mc_escape({0.0, 0.0}, cfg, std::nullopt, h, 2000, 7);
    // engineering bias envelope C sqrt(h) with C = 25 bounding the fits
    REQUIRE(std::abs(est.mean - direct({0.0, 0.0})) <
            3.0 * (est.stderr_ + 25.0 * std::sqrt(h)));
    REQUIRE(est.stderr_ > 0.0);
    REQUIRE(est.trials == 2000);
}

TEST_CASE("drift pushes the walker toward or away from the target") {
    // potential increasing toward the arc at angle 0 biases drift toward it,
    // shortening escape; the opposite sign lengthens it
    const double eps = 0.3, h = 1e-3;
    TargetConfiguration cfg{{BoundaryArc(0.0, eps)}};
    const auto toward = mc_escape({0.0, 0.0}, cfg, linear_potential(2.0, 0.0), h, 1500, 11);
    const auto away = mc_escape({0.0, 0.0}, cfg, linear_potential(-2.0, 0.0), h, 1500, 11);
    REQUIRE(toward.mean < away.mean);
}
