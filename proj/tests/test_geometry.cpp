// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nesc/geometry.hpp"

using namespace nesc;

TEST_CASE("chord distance identity") {
    REQUIRE(chord_distance(0.0, pi) == Catch::Approx(2.0).margin(1e-15));
    REQUIRE(chord_distance(0.3, 0.3) == 0.0);
    // |x(s1) - x(s2)| directly
    const double s1 = 0.4, s2 = 2.1;
    REQUIRE(chord_distance(s1, s2) ==
            Catch::Approx(distance(arc_point(s1), arc_point(s2))).margin(1e-14));
}

TEST_CASE("arc membership handles wraparound") {
    const BoundaryArc a(0.0, 0.1);
    REQUIRE(a.contains_angle(0.05));
    REQUIRE(a.contains_angle(-0.05));
    REQUIRE(a.contains_angle(2.0 * pi - 0.05));
    REQUIRE_FALSE(a.contains_angle(0.2));
    const BoundaryArc b(2.0 * pi - 0.01, 0.05);
    REQUIRE(b.contains_angle(0.02));
}

TEST_CASE("configuration validation") {
    TargetConfiguration ok{{BoundaryArc(0.0, 0.1), BoundaryArc(pi, 0.1)}};
    REQUIRE_NOTHROW(validate(ok));

    TargetConfiguration overlap{{BoundaryArc(0.0, 0.2), BoundaryArc(0.3, 0.2)}};
    REQUIRE_THROWS_AS(validate(overlap), OverlappingArcs);

    TargetConfiguration wrap_overlap{{BoundaryArc(0.05, 0.1), BoundaryArc(2.0 * pi - 0.02, 0.1)}};
    REQUIRE_THROWS_AS(validate(wrap_overlap), OverlappingArcs);

    TargetConfiguration degenerate{{BoundaryArc(0.0, 0.0)}};
    REQUIRE_THROWS_AS(validate(degenerate), DegenerateArc);

    TargetConfiguration huge{{BoundaryArc(0.0, 3.5)}};
    REQUIRE_THROWS_AS(validate(huge), ArcTooLarge);
}

TEST_CASE("distance to the absorbing set") {
    TargetConfiguration cfg{{BoundaryArc(0.0, 0.1)}};
    // center of the disk: nearest arc point is (1, 0)
    REQUIRE(cfg.distance_to_arcs({0.0, 0.0}) == Catch::Approx(1.0).margin(1e-12));
    // radially in front of the arc
    REQUIRE(cfg.distance_to_arcs({0.5, 0.0}) == Catch::Approx(0.5).margin(1e-12));
    // just past the arc endpoint along the circle
    const Vec2 p = arc_point(0.2);
    REQUIRE(cfg.distance_to_arcs(p) ==
            Catch::Approx(distance(p, arc_point(0.1))).margin(1e-12));
}
