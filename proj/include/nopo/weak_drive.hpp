#pragma once

// Steady-state amplitudes of the six-state weak-drive truncation
// |000>, |100>, |011>, |200>, |111>, |022> under the non-Hermitian
// Hamiltonian, solved order by order in the drive amplitude. The state is
// left unnormalized (c000 = 1); normalization corrections are O(E^2) and
// cancel in the correlation ratios.

#include "nopo/model.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct WeakDriveAmplitudes {
    Complex c000, c100, c011, c200, c111, c022;
    // Set when E > 0.1 * min kappa, outside the validity regime.
    bool regime_warning = false;
};

struct WeakDriveObservables {
    double n_D = 0.0;
    double g2_D = 0.0;
};

WeakDriveAmplitudes solve_amplitudes(const SystemParams& p);

// n_D = |c011|^2 and g2_D = 4 |c022|^2 / |c011|^4; the factor 4 is the
// squared matrix element of D^2 between |022> and the vacuum.
WeakDriveObservables observables_from_amplitudes(const WeakDriveAmplitudes& amps);

} // namespace nopo
