#include "nopo/fock.hpp"

#include <cmath>
#include <vector>

namespace nopo {

HilbertSpace build_space(const ModeCutoffs& cutoffs) {
    if (cutoffs.n_a_max < 1 || cutoffs.n_b_max < 1 || cutoffs.n_c_max < 1) {
        throw InvalidConfig("build_space: every mode cutoff must be >= 1");
    }
    HilbertSpace space;
    space.cutoffs = cutoffs;
    space.dim = (cutoffs.n_a_max + 1) * (cutoffs.n_b_max + 1) * (cutoffs.n_c_max + 1);
    return space;
}

void canonicalize(Operator& op) {
    op.prune(Complex(1.0, 0.0), 0.0);
    op.makeCompressed();
}

Operator annihilation(const HilbertSpace& space, Mode mode) {
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(space.dim));
    for (int flat = 0; flat < space.dim; ++flat) {
        auto [m, n, l] = space.levels_of(flat);
        int& quanta = (mode == Mode::a) ? m : (mode == Mode::b) ? n : l;
        if (quanta == 0) continue;
        const double amp = std::sqrt(static_cast<double>(quanta));
        quanta -= 1;
        entries.emplace_back(space.index_of(m, n, l), flat, Complex(amp, 0.0));
    }
    Operator op(space.dim, space.dim);
    op.setFromTriplets(entries.begin(), entries.end());
    canonicalize(op);
    return op;
}

Operator creation(const HilbertSpace& space, Mode mode) {
    return adjoint(annihilation(space, mode));
}

Operator number_operator(const HilbertSpace& space, Mode mode) {
    std::vector<Eigen::Triplet<Complex>> entries;
    for (int flat = 0; flat < space.dim; ++flat) {
        const auto levels = space.levels_of(flat);
        const int quanta = levels[static_cast<int>(mode)];
        if (quanta > 0) {
            entries.emplace_back(flat, flat, Complex(quanta, 0.0));
        }
    }
    Operator op(space.dim, space.dim);
    op.setFromTriplets(entries.begin(), entries.end());
    canonicalize(op);
    return op;
}

Operator identity_operator(int dim) {
    Operator op(dim, dim);
    op.setIdentity();
    return op;
}

Operator adjoint(const Operator& op) {
    Operator result = op.adjoint();
    canonicalize(result);
    return result;
}

Operator compose(const Operator& x, const Operator& y) {
    if (x.cols() != y.rows()) {
        throw DimensionMismatch("compose: inner dimensions differ");
    }
    Operator result = x * y;
    canonicalize(result);
    return result;
}

Operator add(const Operator& x, const Operator& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionMismatch("add: dimensions differ");
    }
    Operator result = x + y;
    canonicalize(result);
    return result;
}

Operator scale(Complex factor, const Operator& op) {
    Operator result = factor * op;
    canonicalize(result);
    return result;
}

} // namespace nopo
