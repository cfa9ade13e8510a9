#pragma once

#include <stdexcept>
#include <string>

namespace nopo {

// Thrown on invalid parameters, cutoffs or sweep configuration.
struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Steady-state solver found two orthogonal near-null vectors; the stationary
// state is not unique and must not be silently averaged.
struct DegenerateKernel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Steady-state solver (direct plus iterative refinement) missed tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed-form denominator vanished to working precision.
struct DegenerateDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A linear system of the drive-amplitude hierarchy is singular.
struct SingularHierarchy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cutoff search hit the per-mode cap without meeting the tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure (integrator instability, non-physical state,
// imaginary parts above tolerance where a real value is required).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nopo
