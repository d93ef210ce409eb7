#include "bimetric/linalg.hpp"

#include <algorithm>

namespace bimetric {

namespace {

struct SvdParts {
  Eigen::VectorXd sigma;
  Matrix u;
  Matrix v;
  double cutoff;
  int rank;
};

SvdParts decompose(const Matrix& a, double relative_cutoff, unsigned options) {
  SvdParts parts;
  if (a.rows() == 0 || a.cols() == 0) {
    parts.u = Matrix::Identity(a.rows(), a.rows());
    parts.v = Matrix::Identity(a.cols(), a.cols());
    parts.cutoff = 0.0;
    parts.rank = 0;
    return parts;
  }
  Eigen::JacobiSVD<Matrix> svd(a, options);
  parts.sigma = svd.singularValues();
  parts.u = (options & Eigen::ComputeThinU) ? svd.matrixU() : Matrix();
  parts.v = (options & Eigen::ComputeFullV) ? svd.matrixV() : Matrix();
  const double sigma_max = parts.sigma.size() > 0 ? parts.sigma(0) : 0.0;
  parts.cutoff = relative_cutoff * sigma_max;
  parts.rank = 0;
  if (sigma_max > 0.0) {
    for (Eigen::Index i = 0; i < parts.sigma.size(); ++i) {
      if (parts.sigma(i) > parts.cutoff) ++parts.rank;
    }
  }
  return parts;
}

}  // namespace

Matrix null_space(const Matrix& a, double relative_cutoff) {
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  const auto parts = decompose(a, relative_cutoff, Eigen::ComputeFullV);
  const Eigen::Index n = a.cols();
  return parts.v.rightCols(n - parts.rank);
}

Matrix column_space(const Matrix& a, double relative_cutoff) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  const auto parts = decompose(a, relative_cutoff, Eigen::ComputeThinU);
  return parts.u.leftCols(parts.rank);
}

int numerical_rank(const Matrix& a, double relative_cutoff) {
  return decompose(a, relative_cutoff, 0).rank;
}

}  // namespace bimetric
