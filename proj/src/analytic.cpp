#include "nopo/analytic.hpp"

#include <cmath>

namespace nopo {

namespace {

constexpr double kDenominatorFloor = 1e-300;

void guard_denominator(Complex value, const char* what) {
    if (std::abs(value) < kDenominatorFloor) {
        throw DegenerateDenominator(what);
    }
}

} // namespace

double g2_pair_analytic(const SystemParams& p) {
    const Complex da = detuning_prime_a(p);
    const Complex dbc = detuning_prime_bc_sum(p);
    const Complex pair_pole = dbc * da - p.g * p.g;
    const Complex sum_pole = da + dbc;
    guard_denominator(pair_pole, "g2_pair_analytic: (D'_b + D'_c) D'_a - g^2 vanishes");
    guard_denominator(sum_pole, "g2_pair_analytic: D'_a + D'_b + D'_c vanishes");
    const Complex ratio = 1.0 - p.g * p.g * da / (sum_pole * pair_pole);
    guard_denominator(ratio, "g2_pair_analytic: interference factor vanishes");
    const double mag = std::norm(ratio);
    return 4.0 / mag;
}

double pair_number_analytic(const SystemParams& p) {
    const Complex da = detuning_prime_a(p);
    const Complex dbc = detuning_prime_bc_sum(p);
    const Complex pair_pole = dbc * da - p.g * p.g;
    guard_denominator(pair_pole, "pair_number_analytic: (D'_b + D'_c) D'_a - g^2 vanishes");
    return p.g * p.g * p.E * p.E / std::norm(pair_pole);
}

double optimal_delta(double delta_a, double g) {
    if (delta_a == 0.0) {
        throw InvalidConfig("optimal_delta: delta_a must be nonzero");
    }
    return g * g / (2.0 * delta_a);
}

double g2_on_optimal_curve(double delta_a, double g, double kappa_a, double kappa_pair) {
    if (!(kappa_a > 0.0) || !(kappa_pair > 0.0)) {
        throw InvalidConfig("g2_on_optimal_curve: rates must be positive");
    }
    const double da2 = delta_a * delta_a;
    const double g2 = g * g;
    const double num = 4.0 * (da2 + g2) * (da2 + g2) *
                       (g2 * kappa_a + da2 * kappa_pair) *
                       (g2 * kappa_a + da2 * kappa_pair);
    const double den = kappa_a * kappa_a * g2 * g2 * g2 * g2 +
                       4.0 * g2 * g2 * da2 * da2 * da2;
    return num / den;
}

double optimal_delta_a(double g, double kappa_a, double kappa) {
    if (!(kappa_a > 0.0) || !(kappa > 0.0)) {
        throw InvalidConfig("optimal_delta_a: rates must be positive");
    }
    const double r = kappa_a / kappa;
    return g * std::sqrt((r + 2.0 + std::sqrt(r * r + 28.0 * r + 4.0)) / 4.0);
}

double resonance_condition_check(double delta_a, double delta, double g) {
    return 2.0 * delta * delta_a - g * g;
}

DressedLevels dressed_energies(double omega_a, double omega_b, double omega_c, double g) {
    if (g < 0.0) {
        throw InvalidConfig("dressed_energies: g must be nonnegative");
    }
    const double sum = omega_a + omega_b + omega_c;
    const double mismatch = omega_a - omega_b - omega_c;
    const double split = std::sqrt(4.0 * g * g + mismatch * mismatch);

    DressedLevels levels;
    levels.e1_plus = 0.5 * (sum + split);
    levels.e1_minus = 0.5 * (sum - split);
    if (std::abs(mismatch) <= 1e-12) {
        levels.e2_plus = 2.0 * omega_a + std::sqrt(6.0) * g;
        levels.e2_zero = 2.0 * omega_a;
        levels.e2_minus = 2.0 * omega_a - std::sqrt(6.0) * g;
    }
    return levels;
}

} // namespace nopo
