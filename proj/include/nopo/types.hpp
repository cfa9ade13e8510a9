#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace nopo {

using Complex = std::complex<double>;

// All operators act on the truncated Fock space and are kept in canonical
// compressed column form (no stored zeros), so equality tests are meaningful.
using Operator = Eigen::SparseMatrix<Complex>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

} // namespace nopo
