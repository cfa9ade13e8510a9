#pragma once

// Steady-state expectation values and zero-delay correlation functions.
//
//   g2_x  = Tr(x^dag2 x^2 rho) / Tr(x^dag x rho)^2
//   g2_xy = Tr(x^dag x y^dag y rho) / [Tr(x^dag x rho) Tr(y^dag y rho)]
//
// The photon pair is D = b c; n_D = <D^dag D>. A correlation whose
// denominator occupation falls below 1e-18 is reported as undefined (an
// empty optional), never as a placeholder number.

#include <optional>

#include "nopo/fock.hpp"
#include "nopo/liouvillian.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct CorrelationReport {
    std::optional<double> n_a, n_b, n_c;
    std::optional<double> n_D;
    std::optional<double> g2_a, g2_b, g2_c, g2_D;
    std::optional<double> g2_bc, g2_ab, g2_ac;
};

// Tr(op * rho).
Complex expectation(const DensityMatrix& rho, const Operator& op);

// Pair annihilation operator D = b c.
Operator pair_operator(const HilbertSpace& space);

std::optional<double> auto_g2(const DensityMatrix& rho, const Operator& x);
std::optional<double> cross_g2(const DensityMatrix& rho, const Operator& x,
                               const Operator& y);

// All quantities of interest at one parameter point.
CorrelationReport report(const DensityMatrix& rho, const HilbertSpace& space);

} // namespace nopo
