#include "nopo/steady_state.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <string>
#include <vector>

namespace nopo {

namespace {

// Copy of the generator with one row replaced by the trace functional.
SparseMatrix trace_replaced_system(const Superoperator& l, int trace_row) {
    const int d = l.dim;
    const int n = d * d;
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(l.matrix.nonZeros()) + d);
    for (int k = 0; k < l.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it) {
            if (it.row() != trace_row) {
                entries.emplace_back(it.row(), it.col(), it.value());
            }
        }
    }
    for (int m = 0; m < d; ++m) {
        entries.emplace_back(trace_row, m * d + m, Complex(1.0, 0.0));
    }
    SparseMatrix system(n, n);
    system.setFromTriplets(entries.begin(), entries.end());
    system.makeCompressed();
    return system;
}

Vector solve_with_trace_row(const Superoperator& l, int trace_row) {
    const int n = l.dim * l.dim;
    const SparseMatrix system = trace_replaced_system(l, trace_row);

    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(system);
    lu.factorize(system);
    if (lu.info() != Eigen::Success) {
        // LU could not factorize the constrained system; with the trace row in
        // place this happens when the kernel has more than one direction.
        throw DegenerateKernel("steady_state: constrained system is singular "
                              "(multiple stationary states?)");
    }
    Vector rhs = Vector::Zero(n);
    rhs[trace_row] = 1.0;
    Vector x = lu.solve(rhs);

    // One round of iterative refinement in the same factorization knocks the
    // LU roundoff down when the generator is badly scaled.
    Vector r = rhs - system * x;
    x += lu.solve(r);
    return x;
}

int count_near_null_directions(const Superoperator& l) {
    const int n = l.dim * l.dim;
    if (n > 4096) {
        return -1; // dense spectral cross-check not affordable
    }
    const DenseMatrix dense = DenseMatrix(l.matrix);
    Eigen::ComplexEigenSolver<DenseMatrix> solver(dense, false);
    const double scale = operator_inf_norm(l.matrix);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(solver.eigenvalues()[i]) <= 1e-10 * scale) {
            ++count;
        }
    }
    return count;
}

} // namespace

double operator_inf_norm(const SparseMatrix& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    return row_sums.maxCoeff();
}

double residual(const Superoperator& l, const DensityMatrix& rho) {
    if (rho.dim() != l.dim) {
        throw DimensionMismatch("residual: dimensions differ");
    }
    return (l.matrix * vectorize(rho.matrix)).cwiseAbs().maxCoeff();
}

DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& options) {
    const int d = l.dim;
    if (options.trace_state < 0 || options.trace_state >= d) {
        throw InvalidConfig("steady_state: trace state out of range");
    }
    const int trace_row = options.trace_state * d + options.trace_state;

    const Vector x = solve_with_trace_row(l, trace_row);
    DensityMatrix rho{unvectorize(x, d)};

    const double tol = 1e-10 * operator_inf_norm(l.matrix);
    const double res = residual(l, rho);
    if (!(res <= tol)) {
        // The direct solve missed tolerance; decide between a degenerate
        // kernel and plain non-convergence via the spectral cross-check.
        const int null_dirs = count_near_null_directions(l);
        if (null_dirs >= 2) {
            throw DegenerateKernel("steady_state: found " + std::to_string(null_dirs) +
                                   " near-null directions");
        }
        throw NonConvergence("steady_state: residual " + std::to_string(res) +
                             " exceeds tolerance " + std::to_string(tol));
    }

    if (options.verify_unique) {
        const int other_state = (options.trace_state == 0) ? d - 1 : 0;
        const Vector y = solve_with_trace_row(l, other_state * d + other_state);
        const double diff = (x - y).cwiseAbs().maxCoeff();
        if (!(diff < 1e-8)) {
            throw DegenerateKernel("steady_state: trace-row sentinel disagrees by " +
                                   std::to_string(diff));
        }
    }

    const double herm = hermiticity_defect(rho.matrix);
    if (!(herm <= 1e-10)) {
        throw NumericalError("steady_state: Hermiticity defect " + std::to_string(herm));
    }
    const double trace_err = std::abs(rho.matrix.trace() - Complex(1.0, 0.0));
    if (!(trace_err <= 1e-10)) {
        throw NumericalError("steady_state: trace deviates by " + std::to_string(trace_err));
    }
    const double min_eig = smallest_eigenvalue(rho.matrix);
    if (!(min_eig >= -1e-8)) {
        throw NumericalError("steady_state: negative eigenvalue " + std::to_string(min_eig) +
                             " below the -1e-8 floor (unconverged truncation)");
    }
    return rho;
}

} // namespace nopo
