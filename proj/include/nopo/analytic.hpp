#pragma once

// Closed-form weak-drive expressions: pair auto-correlation and brightness,
// the resonant-drive condition 2*Delta*Delta_a = g^2, the pair correlation
// restricted to that curve, and the dressed-level energies of the one- and
// two-excitation manifolds.
//
// Primed detunings absorb the decay: Delta'_x = Delta_x - i*kappa_x/2. The
// closed forms depend on Delta'_b and Delta'_c only through their sum.

#include <optional>

#include "nopo/errors.hpp"
#include "nopo/model.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct DressedLevels {
    double e1_plus = 0.0;
    double e1_minus = 0.0;
    // Two-excitation triplet; available only in the degenerate case
    // omega_b + omega_c = omega_a.
    std::optional<double> e2_plus, e2_zero, e2_minus;
};

inline Complex detuning_prime_a(const SystemParams& p) {
    return {p.delta_a, -0.5 * p.kappa_a};
}
inline Complex detuning_prime_bc_sum(const SystemParams& p) {
    return {p.delta_b + p.delta_c, -0.5 * (p.kappa_b + p.kappa_c)};
}

// 4 * |1 - g^2 D'_a / [(D'_a + D'_b + D'_c)((D'_b + D'_c) D'_a - g^2)]|^-2.
double g2_pair_analytic(const SystemParams& p);

// g^2 E^2 / |(D'_b + D'_c) D'_a - g^2|^2.
double pair_number_analytic(const SystemParams& p);

// Delta = g^2 / (2 Delta_a), the resonant-drive detuning of modes b and c.
double optimal_delta(double delta_a, double g);

// Pair correlation on the curve Delta = g^2/(2 Delta_a):
// 4 (Da^2+g^2)^2 (g^2 ka + Da^2 kD)^2 / (ka^2 g^8 + 4 g^4 Da^6).
// kappa_pair is the effective pair decay rate kappa_b + kappa_c.
double g2_on_optimal_curve(double delta_a, double g, double kappa_a, double kappa_pair);

// Closed-form strong-coupling minimizer of g2_on_optimal_curve,
// g * sqrt([r + 2 + sqrt(r^2 + 28 r + 4)] / 4) with r = kappa_a / kappa.
double optimal_delta_a(double g, double kappa_a, double kappa);

// Residual 2*Delta*Delta_a - g^2; zero iff the drive is resonant with the
// one-pair dressed doublet.
double resonance_condition_check(double delta_a, double delta, double g);

// Bare-frequency dressed energies:
// E_{1,+-} = [wa+wb+wc +- sqrt(4 g^2 + (wa-wb-wc)^2)] / 2, and for
// wb+wc = wa the triplet 2 wa +- sqrt(6) g, 2 wa.
DressedLevels dressed_energies(double omega_a, double omega_b, double omega_c, double g);

} // namespace nopo
