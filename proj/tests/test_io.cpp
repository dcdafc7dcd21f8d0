// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "nesc/io.hpp"

using namespace nesc;
using nlohmann::json;

TEST_CASE("config round trip") {
    const json j = {
        {"arcs", {{{"center", 0.0}, {"half_length", 0.05}},
                  {{"center", 3.14159}, {"half_length", 0.05}}}},
        {"potential", {{"type", "none"}}},
    };
    const auto cfg = parse_config(j);
    REQUIRE(cfg.targets.arcs.size() == 2);
    REQUIRE_FALSE(cfg.potential.has_value());
    REQUIRE(cfg.raw == j);
}

TEST_CASE("linear potential block") {
    const json j = {
        {"arcs", {{{"center", 0.0}, {"half_length", 0.05}}}},
        {"potential", {{"type", "linear"}, {"coeffs", {0.5, -0.25, 1.0}}}},
    };
    const auto cfg = parse_config(j);
    REQUIRE(cfg.potential.has_value());
    REQUIRE((*cfg.potential)({1.0, 2.0}) == Catch::Approx(0.5 - 0.5 + 1.0).margin(1e-15));
    REQUIRE_FALSE(cfg.potential->is_constant);
}

TEST_CASE("malformed configs refuse") {
    REQUIRE_THROWS_AS(parse_config(json{{"arcs", json::array()}}), UsageError);
    REQUIRE_THROWS_AS(parse_config(json{{"potential", {{"type", "none"}}}}), UsageError);
    REQUIRE_THROWS_AS(
        parse_config(json{{"arcs", {{{"center", 0.0}}}}}), UsageError);
    REQUIRE_THROWS_AS(
        parse_config(json{{"arcs", {{{"center", 0.0}, {"half_length", 0.05}}}},
                          {"potential", {{"type", "quartic"}}}}),
        UsageError);
    // invalid geometry propagates the geometry error
    REQUIRE_THROWS_AS(
        parse_config(json{{"arcs", {{{"center", 0.0}, {"half_length", -0.1}}}}}),
        DegenerateArc);
}

TEST_CASE("expansion serialization shape") {
    ExpansionResult r;
    r.leading_constant = 2.0;
    r.spatial_part = [](Vec2 p) { return p.x; };
    r.remainder_order = "O(eps)";
    r.constants["C_eps"] = 2.0;
    const auto j = expansion_json(r, {{0.25, 0.0}});
    REQUIRE(j["leading"] == 2.0);
    REQUIRE(j["samples"][0]["u"] == 2.25);
    REQUIRE(j["constants"]["C_eps"] == 2.0);
}
