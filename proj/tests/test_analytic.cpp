#include <doctest.h>

#include "nopo/analytic.hpp"
#include "nopo/minimize.hpp"
#include "nopo/model.hpp"

#include <cmath>
#include <random>

using namespace nopo;

namespace {

SystemParams on_curve(double g, double delta_a, double kappa = 0.5) {
    SystemParams p;
    p.g = g;
    p.delta_a = delta_a;
    p.delta_b = p.delta_c = optimal_delta(delta_a, g);
    p.E = 0.01;
    p.kappa_a = 1.0;
    p.kappa_b = p.kappa_c = kappa;
    return p;
}

} // namespace

TEST_SUITE_BEGIN("analytic");

TEST_CASE("pair correlation closed form at zero coupling") {
    SystemParams p;
    p.g = 0.0;
    p.delta_a = 1.7;
    p.delta_b = 0.4;
    p.delta_c = -0.9;
    p.E = 0.01;
    p.kappa_a = 1.0;
    p.kappa_b = p.kappa_c = 0.5;
    CHECK(g2_pair_analytic(p) == 4.0);
    CHECK(pair_number_analytic(p) == 0.0);

    p.g = 3.0;
    p.E = 0.0;
    CHECK(pair_number_analytic(p) == 0.0);

    // The weak-coupling limit tends to the uncorrelated value 4.
    double previous = 1e300;
    for (double g : {1e-1, 1e-3, 1e-6}) {
        p.g = g;
        const double deviation = std::abs(g2_pair_analytic(p) - 4.0);
        CHECK(deviation < previous);
        previous = deviation;
    }
    CHECK(previous < 1e-10);
}

TEST_CASE("closed forms depend on the subharmonic detunings only through the sum") {
    SystemParams p = on_curve(10.0, 14.0);
    p.delta_b = 1.0;
    p.delta_c = 2.0;
    const double g2_ref = g2_pair_analytic(p);
    const double nd_ref = pair_number_analytic(p);

    p.delta_b = 1.5;
    p.delta_c = 1.5;
    CHECK(g2_pair_analytic(p) == g2_ref);
    CHECK(pair_number_analytic(p) == nd_ref);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> draw(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const double shift = draw(rng);
        SystemParams q = p;
        q.delta_b = 1.5 + shift;
        q.delta_c = 1.5 - shift;
        CHECK(g2_pair_analytic(q) == doctest::Approx(g2_ref).epsilon(1e-12));
        // Same for a redistribution of the decay rates.
        q.kappa_b = 0.5 + 0.25;
        q.kappa_c = 0.5 - 0.25;
        q.delta_b = q.delta_c = 1.5;
        CHECK(pair_number_analytic(q) == doctest::Approx(nd_ref).epsilon(1e-12));
    }
}

TEST_CASE("resonant-drive detuning") {
    const double g = 10.0;
    CHECK(optimal_delta(g, g) == doctest::Approx(g / 2.0).epsilon(1e-15));
    CHECK(optimal_delta(std::sqrt(3.0) * g, g) ==
          doctest::Approx(g / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
    CHECK_THROWS_AS(optimal_delta(0.0, g), InvalidConfig);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> draw(0.3, 40.0);
    for (int i = 0; i < 20; ++i) {
        const double delta_a = draw(rng);
        const double dd = optimal_delta(delta_a, g);
        CHECK(std::abs(resonance_condition_check(delta_a, dd, g)) <= 1e-12 * g * g);
    }
    CHECK(resonance_condition_check(g, g / 2.0, g) == 0.0);
    CHECK(resonance_condition_check(g, g, g) == doctest::Approx(g * g).epsilon(1e-15));
}

TEST_CASE("curve-restricted correlation approaches the full closed form at strong coupling") {
    // Relative difference between the two expressions shrinks monotonically
    // as g/kappa_a grows (evaluated at delta_a = sqrt(3) g on the curve).
    double previous = 1e300;
    for (double g : {10.0, 100.0, 1000.0}) {
        const double delta_a = std::sqrt(3.0) * g;
        const SystemParams p = on_curve(g, delta_a, 0.5);
        const double full = g2_pair_analytic(p);
        const double curve = g2_on_optimal_curve(delta_a, g, 1.0, 1.0);
        const double rel = std::abs(full - curve) / full;
        CHECK(rel < previous);
        previous = rel;
    }
    CHECK(previous < 1e-4);

    // At the working point (g = 10 kappa_a) the two forms agree within 5%.
    const double g = 10.0;
    const double delta_a = std::sqrt(3.0) * g;
    const double full = g2_pair_analytic(on_curve(g, delta_a, 0.5));
    const double curve = g2_on_optimal_curve(delta_a, g, 1.0, 1.0);
    CHECK(std::abs(full - curve) / full < 0.05);
}

TEST_CASE("brightness peaks at delta_a close to g along the curve") {
    const double g = 10.0;
    double best_value = -1.0;
    double best_delta_a = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double delta_a = std::exp(std::log(g / 2.0) +
                                        i * (std::log(20.0 * g) - std::log(g / 2.0)) / 399.0);
        const double value = pair_number_analytic(on_curve(g, delta_a, 0.5));
        if (value > best_value) {
            best_value = value;
            best_delta_a = delta_a;
        }
    }
    CHECK(std::abs(best_delta_a - g) / g < 0.02);
}

TEST_CASE("curve-restricted correlation has its minimum at sqrt(3) g when kappa_a = 2 kappa") {
    const double g = 1.0;
    const double kappa_a = 1e-4; // strong coupling: g = 1e4 kappa_a
    const double kappa = kappa_a / 2.0;
    const double kappa_pair = 2.0 * kappa;
    const double found = minimize_golden(
        [&](double da) { return g2_on_optimal_curve(da, g, kappa_a, kappa_pair); },
        0.5 * g, 20.0 * g, 1e-10 * g);
    CHECK(std::abs(found - std::sqrt(3.0) * g) / g < 1e-6);
}

TEST_CASE("general curve minimizer matches the closed-form location") {
    const double g = 1.0;
    const double kappa_a = 1e-4;
    for (double ratio : {1.0, 2.0, 4.0}) {
        const double kappa = kappa_a / ratio;
        const double found = minimize_golden(
            [&](double da) { return g2_on_optimal_curve(da, g, kappa_a, 2.0 * kappa); },
            0.5 * g, 20.0 * g, 1e-10 * g);
        const double closed = optimal_delta_a(g, kappa_a, kappa);
        CHECK(std::abs(found - closed) / closed < 1e-4);
    }
}

TEST_CASE("dressed levels in the degenerate configuration") {
    const double omega_a = 5.0, omega_b = 2.0, omega_c = 3.0, g = 0.7;
    const DressedLevels levels = dressed_energies(omega_a, omega_b, omega_c, g);
    CHECK(levels.e1_plus == doctest::Approx(omega_a + g).epsilon(1e-14));
    CHECK(levels.e1_minus == doctest::Approx(omega_a - g).epsilon(1e-14));
    REQUIRE(levels.e2_plus.has_value());
    CHECK(*levels.e2_plus == doctest::Approx(2.0 * omega_a + std::sqrt(6.0) * g).epsilon(1e-14));
    CHECK(*levels.e2_zero == doctest::Approx(2.0 * omega_a).epsilon(1e-14));
    CHECK(*levels.e2_minus == doctest::Approx(2.0 * omega_a - std::sqrt(6.0) * g).epsilon(1e-14));
    CHECK(levels.e1_plus >= levels.e1_minus);
    CHECK(*levels.e2_plus >= *levels.e2_zero);
    CHECK(*levels.e2_zero >= *levels.e2_minus);

    const DressedLevels detuned = dressed_energies(5.0, 2.0, 2.5, g);
    CHECK(!detuned.e2_plus.has_value());
    CHECK(detuned.e1_plus == doctest::Approx(
              0.5 * (9.5 + std::sqrt(4.0 * g * g + 0.25))).epsilon(1e-14));
}

TEST_CASE("dressed levels match direct diagonalization of the undriven Hamiltonian") {
    // With the drive frequency set to zero the detunings equal the bare
    // frequencies, so the undriven Hamiltonian in the Fock basis reproduces
    // the dressed energies.
    const double omega_a = 5.0, omega_b = 2.0, omega_c = 3.0, g = 0.7;
    const HilbertSpace space = build_space({2, 2, 2});
    SystemParams p;
    p.delta_a = omega_a;
    p.delta_b = omega_b;
    p.delta_c = omega_c;
    p.g = g;
    p.E = 0.0;
    p.kappa_a = p.kappa_b = p.kappa_c = 1.0; // irrelevant for the Hermitian part
    const DenseMatrix h = DenseMatrix(hamiltonian(space, p));

    const auto block_energies = [&](const std::vector<int>& idx) {
        DenseMatrix block(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = 0; j < idx.size(); ++j) {
                block(i, j) = h(idx[i], idx[j]);
            }
        }
        Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block, Eigen::EigenvaluesOnly);
        return Eigen::VectorXd(solver.eigenvalues());
    };

    const DressedLevels levels = dressed_energies(omega_a, omega_b, omega_c, g);
    const auto one = block_energies({space.index_of(1, 0, 0), space.index_of(0, 1, 1)});
    CHECK(std::abs(one[0] - levels.e1_minus) < 1e-10);
    CHECK(std::abs(one[1] - levels.e1_plus) < 1e-10);

    const auto two = block_energies({space.index_of(2, 0, 0), space.index_of(1, 1, 1),
                                     space.index_of(0, 2, 2)});
    CHECK(std::abs(two[0] - *levels.e2_minus) < 1e-10);
    CHECK(std::abs(two[1] - *levels.e2_zero) < 1e-10);
    CHECK(std::abs(two[2] - *levels.e2_plus) < 1e-10);
}

TEST_CASE("denominator guard") {
    SystemParams p;
    p.g = 1.0;
    p.delta_a = 1.0;
    p.delta_b = p.delta_c = 0.5; // (delta_b + delta_c) * delta_a = g^2
    p.E = 0.01;
    p.kappa_a = p.kappa_b = p.kappa_c = 1e-305;
    CHECK_THROWS_AS(pair_number_analytic(p), DegenerateDenominator);
}

TEST_SUITE_END();
