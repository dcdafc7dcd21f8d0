// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nesc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Geometry
struct OverlappingArcs : Error { using Error::Error; };
struct DegenerateArc : Error { using Error::Error; };
struct ArcTooLarge : Error { using Error::Error; };

// Log-kernel engine
struct SingularKernel : Error { using Error::Error; };

// Disk kernels
struct CoincidentPoints : Error { using Error::Error; };
struct RootFindFailure : Error { using Error::Error; };
struct ResonantFrequency : Error { using Error::Error; };

// Asymptotic expansions
struct TooCloseToArc : Error { using Error::Error; };
struct DegenerateSystem : Error { using Error::Error; };
struct InvalidGap : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };

// Linear solves
struct IllConditioned : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };

// Eigenvalue shifts
struct DegenerateEigenvalue : Error { using Error::Error; };
struct MissingEigenpair : Error { using Error::Error; };

// Oracle solvers
struct NoRootInWindow : Error { using Error::Error; };
struct MultipleRootsSuspected : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct NonAbsorbing : Error { using Error::Error; };
struct DriftSolveFailure : Error { using Error::Error; };

// CLI
struct UsageError : Error { using Error::Error; };

} // namespace nesc
