#pragma once

// Lindblad generator as a sparse superoperator on column-vectorized density
// matrices, plus a fixed-step RK4 propagator used for cross-validation.
//
// Vectorization convention (column stacking): vec(rho) stacks the columns of
// rho, so vec(A rho B) = (B^T kron A) vec(rho). Every superoperator identity
// in this project uses that convention.
//
// The dissipator follows the (rate/2) L[A] normalization with
// L[A] rho = 2 A rho A^dag - A^dag A rho - rho A^dag A, so a free decaying
// mode obeys d<n>/dt = -rate * <n>.

#include "nopo/fock.hpp"
#include "nopo/model.hpp"
#include "nopo/types.hpp"

namespace nopo {

struct Superoperator {
    int dim = 0;          // Hilbert-space dimension D; matrix is D^2 x D^2
    SparseMatrix matrix;
};

struct DensityMatrix {
    DenseMatrix matrix;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

// Pure state |flat><flat| on a D-dimensional space.
DensityMatrix basis_projector(int dim, int flat);
DensityMatrix maximally_mixed(int dim);

Vector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Vector& v, int dim);

// max |rho - rho^dag| element.
double hermiticity_defect(const DenseMatrix& rho);
// Smallest eigenvalue of the Hermitian part.
double smallest_eigenvalue(const DenseMatrix& rho);
// (1/2) * sum of singular values of rho - sigma.
double trace_distance(const DenseMatrix& rho, const DenseMatrix& sigma);

Superoperator kron_superoperator(const SparseMatrix& left, const SparseMatrix& right);

// vec(A rho B) map under column stacking.
Superoperator sandwich(const Operator& left_factor, const Operator& right_factor);

// (rate/2) * (2 A rho A^dag - A^dag A rho - rho A^dag A) as a superoperator.
Superoperator dissipator(const Operator& op, double rate);

// Full generator: -i[H, .] plus mode dissipators at rates kappa_a,b,c.
Superoperator liouvillian(const HilbertSpace& space, const SystemParams& p);

DenseMatrix apply(const Superoperator& l, const DenseMatrix& rho);

// Fixed-step classical RK4 on vec(rho). The output is re-Hermitized and
// trace-renormalized once at the end, never per step, so the propagation
// itself stays a faithful linear map. Trace drift beyond 1e-6 per unit time
// raises NumericalError (step-size instability).
DensityMatrix evolve(const Superoperator& l, const DensityMatrix& rho0,
                     double t_final, double dt);

} // namespace nopo
