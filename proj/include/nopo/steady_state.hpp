#pragma once

// Solve L vec(rho_s) = 0 with trace(rho_s) = 1 by replacing one row of the
// D^2 x D^2 system with the vectorized trace functional and solving the
// square system with sparse LU. Deterministic for identical input.

#include "nopo/liouvillian.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct SteadyStateOptions {
    // Basis state whose population equation is replaced by the trace
    // constraint; 0 selects the (0,0) matrix element equation. Only diagonal
    // rows participate in the trace left-kernel dependency of the generator,
    // so only they keep the constrained system square and regular. The choice
    // is arbitrary but fixed, and the uniqueness sentinel checks
    // insensitivity to it.
    int trace_state = 0;
    // Re-solve with a different replaced population row and require
    // agreement; raises DegenerateKernel on disagreement beyond 1e-8 in max
    // norm.
    bool verify_unique = false;
};

// Infinity norm (max absolute row sum) of the generator.
double operator_inf_norm(const SparseMatrix& m);

// || L vec(rho) ||_inf.
double residual(const Superoperator& l, const DensityMatrix& rho);

// Unique steady state, validated: residual <= 1e-10 * ||L||_inf, Hermiticity
// defect <= 1e-10, |trace - 1| <= 1e-10, smallest eigenvalue >= -1e-8. A
// negative eigenvalue below the floor raises NumericalError (it indicates an
// unconverged truncation) instead of being clipped.
DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& options = {});

} // namespace nopo
