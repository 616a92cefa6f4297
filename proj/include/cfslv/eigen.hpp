#pragma once

#include <vector>

#include "cfslv/matrix.hpp"

namespace cfslv {

struct EigenDecomposition {
  /// Sorted descending.
  std::vector<double> values;
  /// Column i is the unit eigenvector for values[i].
  Matrix vectors;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm drops below 1e-12·‖A‖_F.
/// Throws InvalidArgument for non-square or non-symmetric input (relative
/// tolerance 1e-12) and ConvergenceError after 100 sweeps.
EigenDecomposition symmetric_eig(const Matrix& a);

/// Singular values of an m×k matrix (m ≥ k), sorted descending, by one-sided
/// Jacobi orthogonalization of the columns.
std::vector<double> singular_values(const Matrix& a);

/// True when |a_ij − a_ji| ≤ tol·max(1, |a_ij|) for all i, j.
bool is_symmetric(const Matrix& a, double tol = 1e-12);

}  // namespace cfslv
