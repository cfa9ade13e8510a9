#include "nopo/observables.hpp"

#include <cmath>
#include <string>

namespace nopo {

namespace {

constexpr double kUndefinedOccupation = 1e-18;
constexpr double kImagTolerance = 1e-10;

// Real part of an expectation that must be real, with a consistency check.
double real_expectation(const DensityMatrix& rho, const Operator& op,
                        const char* what) {
    const Complex value = expectation(rho, op);
    if (std::abs(value.imag()) > kImagTolerance) {
        throw NumericalError(std::string(what) + ": imaginary part " +
                             std::to_string(value.imag()) + " exceeds 1e-10");
    }
    return value.real();
}

} // namespace

Complex expectation(const DensityMatrix& rho, const Operator& op) {
    if (rho.dim() != op.rows() || op.rows() != op.cols()) {
        throw DimensionMismatch("expectation: dimensions differ");
    }
    // Tr(op rho) = sum_{ij} op(i,j) rho(j,i); iterate the sparse factor only.
    Complex trace = 0.0;
    for (int k = 0; k < op.outerSize(); ++k) {
        for (Operator::InnerIterator it(op, k); it; ++it) {
            trace += it.value() * rho.matrix(it.col(), it.row());
        }
    }
    return trace;
}

Operator pair_operator(const HilbertSpace& space) {
    return compose(annihilation(space, Mode::b), annihilation(space, Mode::c));
}

std::optional<double> auto_g2(const DensityMatrix& rho, const Operator& x) {
    const Operator x_dag = adjoint(x);
    const Operator num_op = compose(x_dag, x);
    const double occupation = real_expectation(rho, num_op, "auto_g2 occupation");
    if (occupation < kUndefinedOccupation) {
        return std::nullopt;
    }
    const Operator two_quanta = compose(x_dag, compose(num_op, x)); // x^dag2 x^2
    const double numerator = real_expectation(rho, two_quanta, "auto_g2 numerator");
    return numerator / (occupation * occupation);
}

std::optional<double> cross_g2(const DensityMatrix& rho, const Operator& x,
                               const Operator& y) {
    const Operator nx = compose(adjoint(x), x);
    const Operator ny = compose(adjoint(y), y);
    const double occ_x = real_expectation(rho, nx, "cross_g2 occupation x");
    const double occ_y = real_expectation(rho, ny, "cross_g2 occupation y");
    if (occ_x < kUndefinedOccupation || occ_y < kUndefinedOccupation) {
        return std::nullopt;
    }
    const double numerator = real_expectation(rho, compose(nx, ny), "cross_g2 numerator");
    return numerator / (occ_x * occ_y);
}

CorrelationReport report(const DensityMatrix& rho, const HilbertSpace& space) {
    if (rho.dim() != space.dim) {
        throw DimensionMismatch("report: density matrix does not match space");
    }
    const Operator a = annihilation(space, Mode::a);
    const Operator b = annihilation(space, Mode::b);
    const Operator c = annihilation(space, Mode::c);
    const Operator d = pair_operator(space);

    CorrelationReport out;
    out.n_a = real_expectation(rho, number_operator(space, Mode::a), "n_a");
    out.n_b = real_expectation(rho, number_operator(space, Mode::b), "n_b");
    out.n_c = real_expectation(rho, number_operator(space, Mode::c), "n_c");
    out.n_D = real_expectation(rho, compose(adjoint(d), d), "n_D");
    out.g2_a = auto_g2(rho, a);
    out.g2_b = auto_g2(rho, b);
    out.g2_c = auto_g2(rho, c);
    out.g2_D = auto_g2(rho, d);
    out.g2_bc = cross_g2(rho, b, c);
    out.g2_ab = cross_g2(rho, a, b);
    out.g2_ac = cross_g2(rho, a, c);
    return out;
}

} // namespace nopo
