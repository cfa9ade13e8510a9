#pragma once

// Truncated three-mode Fock basis |m,n,l> and elementary mode operators as
// sparse matrices. Flat index runs row-major with mode a slowest and mode c
// fastest: flat = m*(n_b_max+1)*(n_c_max+1) + n*(n_c_max+1) + l.

#include <array>

#include "nopo/errors.hpp"
#include "nopo/types.hpp"

namespace nopo {

enum class Mode { a, b, c };

struct ModeCutoffs {
    int n_a_max = 3;
    int n_b_max = 4;
    int n_c_max = 4;

    int max(Mode m) const {
        switch (m) {
        case Mode::a: return n_a_max;
        case Mode::b: return n_b_max;
        default: return n_c_max;
        }
    }
    bool operator==(const ModeCutoffs&) const = default;
};

struct HilbertSpace {
    ModeCutoffs cutoffs;
    int dim = 0;

    int index_of(int m, int n, int l) const {
        return (m * (cutoffs.n_b_max + 1) + n) * (cutoffs.n_c_max + 1) + l;
    }
    // Inverse of index_of; returns {m, n, l}.
    std::array<int, 3> levels_of(int flat) const {
        const int dc = cutoffs.n_c_max + 1;
        const int db = cutoffs.n_b_max + 1;
        return {flat / (db * dc), (flat / dc) % db, flat % dc};
    }
};

// Validates the cutoffs (each >= 1) and computes the total dimension.
HilbertSpace build_space(const ModeCutoffs& cutoffs);

// Single-mode lowering operator embedded in the full space, <n-1|x|n> = sqrt(n).
Operator annihilation(const HilbertSpace& space, Mode mode);
Operator creation(const HilbertSpace& space, Mode mode);
Operator number_operator(const HilbertSpace& space, Mode mode);
Operator identity_operator(int dim);

// Conjugate transpose in canonical form.
Operator adjoint(const Operator& op);

// Matrix product / sum / scalar multiple in canonical sparse form. The
// dimension checks throw DimensionMismatch.
Operator compose(const Operator& x, const Operator& y);
Operator add(const Operator& x, const Operator& y);
Operator scale(Complex factor, const Operator& op);

// Drops stored entries that are exactly zero and compresses. The pruning
// threshold is exactly 0; entries are products of square roots and couplings,
// and epsilon pruning could silently alter the physics.
void canonicalize(Operator& op);

} // namespace nopo
