#include "nopo/weak_drive.hpp"

#include "nopo/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace nopo {

WeakDriveAmplitudes solve_amplitudes(const SystemParams& p) {
    validate(p);
    const Complex da = detuning_prime_a(p);
    const Complex dbc = detuning_prime_bc_sum(p);
    const double root2 = std::sqrt(2.0);

    WeakDriveAmplitudes amps{};
    amps.c000 = 1.0;
    amps.regime_warning = p.E > 0.1 * std::min({p.kappa_a, p.kappa_b, p.kappa_c});

    // First order: stationary amplitude equations for |100> and |011>,
    //   D'_a c100 + g c011 + E = 0
    //   (D'_b + D'_c) c011 + g c100 = 0.
    Eigen::Matrix2cd first;
    first << da, p.g,
             p.g, dbc;
    Eigen::FullPivLU<Eigen::Matrix2cd> lu1(first);
    if (!lu1.isInvertible()) {
        throw SingularHierarchy("solve_amplitudes: first-order system is singular");
    }
    const Eigen::Vector2cd order1 = lu1.solve(Eigen::Vector2cd(-p.E, 0.0));
    amps.c100 = order1[0];
    amps.c011 = order1[1];

    // Second order: |200>, |111>, |022> driven by the first-order amplitudes.
    // Couplings are the matrix elements of the drive and the pair conversion
    // in the six-state basis: sqrt(2) E for |100>-|200>, E for |011>-|111>,
    // sqrt(2) g for |200>-|111>, 2 g for |111>-|022>.
    Eigen::Matrix3cd second;
    second << 2.0 * da, root2 * p.g, 0.0,
              root2 * p.g, da + dbc, 2.0 * p.g,
              0.0, 2.0 * p.g, 2.0 * dbc;
    Eigen::FullPivLU<Eigen::Matrix3cd> lu2(second);
    if (!lu2.isInvertible()) {
        throw SingularHierarchy("solve_amplitudes: second-order system is singular");
    }
    const Eigen::Vector3cd order2 =
        lu2.solve(Eigen::Vector3cd(-root2 * p.E * amps.c100, -p.E * amps.c011, 0.0));
    amps.c200 = order2[0];
    amps.c111 = order2[1];
    amps.c022 = order2[2];
    return amps;
}

WeakDriveObservables observables_from_amplitudes(const WeakDriveAmplitudes& amps) {
    const double first_order = std::abs(amps.c011);
    if (first_order <= 1e-150) {
        throw SingularHierarchy("observables_from_amplitudes: vanishing first-order "
                                "pair amplitude");
    }
    WeakDriveObservables out;
    out.n_D = std::norm(amps.c011);
    out.g2_D = 4.0 * std::norm(amps.c022) / (out.n_D * out.n_D);
    return out;
}

} // namespace nopo
