#pragma once

// Driven three-mode Hamiltonian of the nondegenerate parametric oscillator
// and its non-Hermitian extension with phenomenological decay.
//
// H = Delta_a a^dag a + Delta_b b^dag b + Delta_c c^dag c
//     + g (a b^dag c^dag + a^dag b c) + E (a^dag + a)
//
// All frequencies are detunings in the frame rotating with the drive; the
// conventional normalization is kappa_a = 1.

#include "nopo/fock.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct SystemParams {
    double delta_a = 0.0;
    double delta_b = 0.0;
    double delta_c = 0.0;
    double g = 0.0;      // pair-conversion coupling, real and nonnegative
    double E = 0.0;      // drive amplitude, real and nonnegative
    double kappa_a = 1.0;
    double kappa_b = 0.5;
    double kappa_c = 0.5;
};

// Throws InvalidConfig unless kappa_* > 0, g >= 0 and E >= 0.
void validate(const SystemParams& p);

// Hermitian Hamiltonian; the result equals its own adjoint bit-for-bit after
// canonicalization.
Operator hamiltonian(const HilbertSpace& space, const SystemParams& p);

// H - (i kappa_a/2) a^dag a - (i kappa_b/2) b^dag b - (i kappa_c/2) c^dag c.
Operator non_hermitian_hamiltonian(const HilbertSpace& space, const SystemParams& p);

} // namespace nopo
