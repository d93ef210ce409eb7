#pragma once

#include <Eigen/Dense>

namespace bimetric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Orthonormal basis of ker(A). Singular values at or below
/// `relative_cutoff * sigma_max` count as zero; a zero matrix has full kernel.
Matrix null_space(const Matrix& a, double relative_cutoff);

/// Orthonormal basis of the column space of A, same cutoff rule.
Matrix column_space(const Matrix& a, double relative_cutoff);

/// Numerical rank with the same cutoff rule.
int numerical_rank(const Matrix& a, double relative_cutoff);

/// Symmetric part (A + A^T) / 2; the result is exactly symmetric.
template <typename Derived>
Matrix symmetrized(const Eigen::MatrixBase<Derived>& a) {
  Matrix s = a;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < s.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace bimetric
