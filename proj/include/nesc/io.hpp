// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON configuration and result serialization for the command-line tools.
// Geometry config:
//   {"arcs": [{"center": <radians>, "half_length": <eps>}, ...],
//    "potential": {"type": "none" | "linear", "coeffs": [a, b, c?]}}

#include <optional>
#include <string>

#include <json.hpp>

#include "nesc/asymptotics.hpp"
#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/potential.hpp"

namespace nesc {

struct ProblemConfig {
    TargetConfiguration targets;
    std::optional<Potential> potential;
    nlohmann::json raw; // resolved config echoed into every report
};

inline ProblemConfig parse_config(const nlohmann::json& j) {
    ProblemConfig cfg;
    if (!j.contains("arcs") || !j["arcs"].is_array() || j["arcs"].empty())
        throw UsageError("config must contain a non-empty 'arcs' array");
    for (const auto& a : j["arcs"]) {
        if (!a.contains("center") || !a.contains("half_length"))
            throw UsageError("each arc needs 'center' and 'half_length'");
        cfg.targets.arcs.emplace_back(a["center"].get<double>(),
                                      a["half_length"].get<double>());
    }
    validate(cfg.targets);
    if (j.contains("potential")) {
        const auto& p = j["potential"];
        const std::string type = p.value("type", "none");
        if (type == "none") {
            // leave potential empty: free problem
        } else if (type == "linear") {
            if (!p.contains("coeffs") || !p["coeffs"].is_array() || p["coeffs"].size() < 2)
                throw UsageError("linear potential needs 'coeffs': [a, b] or [a, b, c]");
            const double a = p["coeffs"][0].get<double>();
            const double b = p["coeffs"][1].get<double>();
            const double c = p["coeffs"].size() > 2 ? p["coeffs"][2].get<double>() : 0.0;
            cfg.potential = linear_potential(a, b, c);
        } else {
            throw UsageError("unknown potential type: " + type);
        }
    }
    cfg.raw = j;
    return cfg;
}

inline nlohmann::json config_json(const TargetConfiguration& targets,
                                  const std::string& potential_type = "none") {
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& a : targets.arcs)
        arcs.push_back({{"center", a.center_angle}, {"half_length", a.half_length}});
    return {{"arcs", arcs}, {"potential", {{"type", potential_type}}}};
}

inline nlohmann::json expansion_json(const ExpansionResult& r,
                                     const std::vector<Vec2>& samples) {
    nlohmann::json out;
    out["leading"] = r.leading_constant;
    out["remainder"] = r.remainder_order;
    nlohmann::json cs;
    for (const auto& [k, v] : r.constants) cs[k] = v;
    out["constants"] = cs;
    nlohmann::json ss = nlohmann::json::array();
    for (const auto& x : samples)
        ss.push_back({{"x", {x.x, x.y}}, {"u", r.evaluate(x)}});
    out["samples"] = ss;
    if (r.corrector_pending) out["corrector_pending"] = true;
    return out;
}

} // namespace nesc
