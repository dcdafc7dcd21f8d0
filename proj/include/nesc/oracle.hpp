// SPDX-License-Identifier: Apache-2.0
#pragma once

// Cross-module oracle helpers that combine the direct solver with the
// asymptotic expansions.

#include <optional>

#include "nesc/asymptotics.hpp"
#include "nesc/direct_solver.hpp"
#include "nesc/potential.hpp"

namespace nesc {

/// Numerically extracted O(1) spatial corrector for the single-target drift
/// problem: the direct field minus the leading (epsilon-dependent) constant.
/// With no potential this converges to ln|x - x*| + (1 - |x|^2)/4 as eps -> 0.
inline double drift_corrector_field(const TargetConfiguration& config,
                                    const std::optional<Potential>& potential, Vec2 x,
                                    std::size_t N = 24) {
    const double lead = (!potential || potential->is_constant)
                            ? single_target(config, x).leading_constant
                            : drift_single_target(config, *potential, x).leading_constant;
    const DirectSolution sol = solve_direct(config, potential, N);
    return sol(x) - lead;
}

} // namespace nesc
