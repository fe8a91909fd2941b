#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>

namespace fintriple {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Largest entry modulus; zero for an empty operator.
double max_abs(const SparseOperator& m);
double max_abs(const ComplexMatrix& m);

/// [M, diag(d)] = M diag(d) - diag(d) M, entrywise M_rs (d_s - d_r).
SparseOperator commutator_with_diagonal(const SparseOperator& m, const ComplexVector& d);

}  // namespace fintriple
