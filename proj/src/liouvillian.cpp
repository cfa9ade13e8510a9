#include "nopo/liouvillian.hpp"

#include <cmath>
#include <vector>

namespace nopo {

DensityMatrix basis_projector(int dim, int flat) {
    if (flat < 0 || flat >= dim) {
        throw InvalidConfig("basis_projector: index out of range");
    }
    DenseMatrix rho = DenseMatrix::Zero(dim, dim);
    rho(flat, flat) = 1.0;
    return DensityMatrix{std::move(rho)};
}

DensityMatrix maximally_mixed(int dim) {
    DenseMatrix rho = DenseMatrix::Identity(dim, dim);
    rho /= static_cast<double>(dim);
    return DensityMatrix{std::move(rho)};
}

Vector vectorize(const DenseMatrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Vector& v, int dim) {
    return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

double hermiticity_defect(const DenseMatrix& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double smallest_eigenvalue(const DenseMatrix& rho) {
    const DenseMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double trace_distance(const DenseMatrix& rho, const DenseMatrix& sigma) {
    const DenseMatrix diff = 0.5 * ((rho - sigma) + (rho - sigma).adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Superoperator kron_superoperator(const SparseMatrix& left, const SparseMatrix& right) {
    const int dl = static_cast<int>(left.rows());
    const int dr = static_cast<int>(right.rows());
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(left.nonZeros()) * right.nonZeros());
    for (int kl = 0; kl < left.outerSize(); ++kl) {
        for (SparseMatrix::InnerIterator il(left, kl); il; ++il) {
            for (int kr = 0; kr < right.outerSize(); ++kr) {
                for (SparseMatrix::InnerIterator ir(right, kr); ir; ++ir) {
                    entries.emplace_back(il.row() * dr + ir.row(),
                                         il.col() * dr + ir.col(),
                                         il.value() * ir.value());
                }
            }
        }
    }
    Superoperator result;
    result.dim = dr;
    result.matrix.resize(dl * dr, dl * dr);
    result.matrix.setFromTriplets(entries.begin(), entries.end());
    canonicalize(result.matrix);
    return result;
}

Superoperator sandwich(const Operator& left_factor, const Operator& right_factor) {
    if (left_factor.rows() != right_factor.rows()) {
        throw DimensionMismatch("sandwich: operator dimensions differ");
    }
    const SparseMatrix rt = right_factor.transpose();
    return kron_superoperator(rt, left_factor);
}

Superoperator dissipator(const Operator& op, double rate) {
    if (!(rate > 0.0)) {
        throw InvalidConfig("dissipator: rate must be positive");
    }
    const int d = static_cast<int>(op.rows());
    const Operator op_dag = adjoint(op);
    const Operator num = compose(op_dag, op);
    const SparseMatrix id = identity_operator(d);

    Superoperator jump = sandwich(op, op_dag);       // A rho A^dag
    Superoperator left = kron_superoperator(id, num);  // A^dag A rho
    const SparseMatrix num_t = num.transpose();
    Superoperator right = kron_superoperator(num_t, id); // rho A^dag A

    Superoperator result;
    result.dim = d;
    result.matrix = (0.5 * rate) * (2.0 * jump.matrix - left.matrix - right.matrix);
    canonicalize(result.matrix);
    return result;
}

Superoperator liouvillian(const HilbertSpace& space, const SystemParams& p) {
    const Operator h = hamiltonian(space, p);
    const SparseMatrix id = identity_operator(space.dim);
    const SparseMatrix ht = h.transpose();

    Superoperator result;
    result.dim = space.dim;
    result.matrix = -kImag * (kron_superoperator(id, h).matrix -
                              kron_superoperator(ht, id).matrix);
    result.matrix += dissipator(annihilation(space, Mode::a), p.kappa_a).matrix;
    result.matrix += dissipator(annihilation(space, Mode::b), p.kappa_b).matrix;
    result.matrix += dissipator(annihilation(space, Mode::c), p.kappa_c).matrix;
    canonicalize(result.matrix);
    return result;
}

DenseMatrix apply(const Superoperator& l, const DenseMatrix& rho) {
    if (rho.rows() != l.dim || rho.cols() != l.dim) {
        throw DimensionMismatch("apply: density matrix does not match superoperator");
    }
    const Vector out = l.matrix * vectorize(rho);
    return unvectorize(out, l.dim);
}

DensityMatrix evolve(const Superoperator& l, const DensityMatrix& rho0,
                     double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidConfig("evolve: dt must be positive");
    }
    if (t_final < 0.0) {
        throw InvalidConfig("evolve: t_final must be nonnegative");
    }
    if (rho0.dim() != l.dim) {
        throw DimensionMismatch("evolve: dimensions differ");
    }

    const int d = l.dim;
    Vector v = vectorize(rho0.matrix);
    double t = 0.0;
    while (t < t_final) {
        const double step = std::min(dt, t_final - t);
        const Vector k1 = l.matrix * v;
        const Vector k2 = l.matrix * (v + (0.5 * step) * k1);
        const Vector k3 = l.matrix * (v + (0.5 * step) * k2);
        const Vector k4 = l.matrix * (v + step * k3);
        v += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;

        Complex trace = 0.0;
        for (int m = 0; m < d; ++m) {
            trace += v[m * d + m];
        }
        if (std::abs(trace - 1.0) > 1e-6 * std::max(t, 1.0)) {
            throw NumericalError("evolve: trace drift exceeds 1e-6 per unit time; "
                                 "reduce dt");
        }
    }

    DenseMatrix rho = unvectorize(v, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return DensityMatrix{std::move(rho)};
}

} // namespace nopo
