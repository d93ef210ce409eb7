#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bimetric/error.hpp"
#include "bimetric/linalg.hpp"
#include "bimetric/tolerances.hpp"

namespace bimetric {

/// One term c * e_index of a basis bracket.
struct BracketTerm {
  int index;
  double coeff;
  friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

/// Sparse bracket table keyed by (i, j) with i < j.
using BracketTable = std::map<std::pair<int, int>, std::vector<BracketTerm>>;

/// A real Lie algebra given by structure constants [e_i, e_j] = sum_k c_ij^k e_k.
///
/// Only pairs i < j are stored; [e_j, e_i] = -[e_i, e_j] is produced on access.
/// The ad(e_i) matrices are materialized once at construction, so every
/// accessor is a read of immutable state.
class LieAlgebra {
 public:
  /// Pairs with i > j are stored negated, duplicate k entries are summed and
  /// exact zeros dropped. Throws Error(DimensionMismatch) for out-of-range
  /// indices or i == j.
  LieAlgebra(std::string name, int dim, const BracketTable& table);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const BracketTable& table() const { return table_; }

  /// ad(e_i) as a dense matrix; column j holds [e_i, e_j].
  const Matrix& ad_basis(int i) const { return ad_basis_[static_cast<std::size_t>(i)]; }

  /// [e_i, e_j] for any ordered pair.
  Vector basis_bracket(int i, int j) const { return ad_basis(i).col(j); }

  bool is_abelian() const { return table_.empty(); }

 private:
  std::string name_;
  int dim_;
  BracketTable table_;
  std::vector<Matrix> ad_basis_;
};

namespace detail {
void check_length(const LieAlgebra& lie, Eigen::Index len, const char* what);
}

/// [x, y] by bilinear extension of the structure constants.
template <typename DX, typename DY>
Vector bracket(const LieAlgebra& lie, const Eigen::MatrixBase<DX>& x,
               const Eigen::MatrixBase<DY>& y) {
  detail::check_length(lie, x.size(), "bracket: x");
  detail::check_length(lie, y.size(), "bracket: y");
  Vector out = Vector::Zero(lie.dim());
  for (int i = 0; i < lie.dim(); ++i) {
    if (x(i) != 0.0) out.noalias() += x(i) * (lie.ad_basis(i) * y);
  }
  return out;
}

/// ad(x); column j is [x, e_j].
template <typename D>
Matrix ad_matrix(const LieAlgebra& lie, const Eigen::MatrixBase<D>& x) {
  detail::check_length(lie, x.size(), "ad_matrix: x");
  Matrix out = Matrix::Zero(lie.dim(), lie.dim());
  for (int i = 0; i < lie.dim(); ++i) {
    if (x(i) != 0.0) out += x(i) * lie.ad_basis(i);
  }
  return out;
}

struct JacobiViolation {
  int i;
  int j;
  int k;
  double residual;
};

/// Basis triples i < j < k whose cyclic sum
/// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] has an entry above
/// tol.jacobi. The cyclic sum is totally antisymmetric, so sorted triples
/// cover every case. Empty iff the table satisfies Jacobi.
std::vector<JacobiViolation> validate_jacobi(const LieAlgebra& lie,
                                             const Tolerances& tol = default_tolerances());

/// Symmetric bilinear form on coordinate space. Exact symmetry is enforced
/// at construction by averaging with the transpose.
class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(const Matrix& entries);

  static SymmetricForm zero(int n) { return SymmetricForm(Matrix::Zero(n, n)); }

  const Matrix& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

  template <typename DX, typename DY>
  double operator()(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) const {
    return x.dot(entries_ * y);
  }

  /// Largest eigenvalue of the form.
  double max_eigenvalue() const;
  double min_eigenvalue() const;

  friend SymmetricForm operator+(const SymmetricForm& a, const SymmetricForm& b) {
    return SymmetricForm(a.entries_ + b.entries_);
  }
  friend SymmetricForm operator*(double s, const SymmetricForm& a) {
    return SymmetricForm(s * a.entries_);
  }
  friend SymmetricForm operator-(const SymmetricForm& a) { return SymmetricForm(-a.entries_); }

 private:
  Matrix entries_;
};

/// Positive definite symmetric form, i.e. an inner product on the algebra.
class Metric {
 public:
  /// Throws Error(NotPositiveDefinite) unless every eigenvalue exceeds
  /// tol.rank * max(1, |M|_max).
  explicit Metric(const SymmetricForm& form, const Tolerances& tol = default_tolerances());
  explicit Metric(const Matrix& entries, const Tolerances& tol = default_tolerances())
      : Metric(SymmetricForm(entries), tol) {}

  const SymmetricForm& form() const { return form_; }
  const Matrix& matrix() const { return form_.matrix(); }
  int dim() const { return form_.dim(); }

  template <typename DX, typename DY>
  double operator()(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) const {
    return form_(x, y);
  }

  /// lambda * M for lambda > 0.
  Metric scaled(double lambda) const;

 private:
  SymmetricForm form_;
};

/// ad(x) and automorphism-like maps are plain dense matrices.
using LinearMap = Matrix;

/// Subspace of coordinate space with a Euclidean-orthonormal basis.
class Subspace {
 public:
  Subspace() = default;
  /// Orthonormalizes the given columns; they must already be independent.
  explicit Subspace(const Matrix& basis);

  /// Orthonormal basis of span(columns) with the rank cutoff.
  static Subspace span(const Matrix& columns, double relative_cutoff);
  /// Wraps columns that are already orthonormal.
  static Subspace from_orthonormal(Matrix basis);
  static Subspace zero(int ambient) { return Subspace(Matrix(ambient, 0)); }

  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }

  /// Orthogonal projector onto the subspace.
  Matrix projector() const { return basis_ * basis_.transpose(); }

 private:
  Matrix basis_;
};

/// B(x, y) = trace(ad(x) ad(y)).
SymmetricForm killing_form(const LieAlgebra& lie);

/// True iff every ad(e_i) is skew-adjoint for M:
/// |M([e_i,e_j], e_k) + M(e_j, [e_i,e_k])| <= tol.skew * max(1, |M|_max).
bool is_skew_adjoint_all(const LieAlgebra& lie, const Metric& metric,
                         const Tolerances& tol = default_tolerances());

/// Largest skew-adjointness residual over basis triples (unnormalized).
double skew_adjoint_residual(const LieAlgebra& lie, const SymmetricForm& form);

/// Z(g): kernel of x -> ad(x), solved as an n^2 x n system.
Subspace center(const LieAlgebra& lie, const Tolerances& tol = default_tolerances());

/// [g, g]: span of all basis brackets.
Subspace derived_subalgebra(const LieAlgebra& lie, const Tolerances& tol = default_tolerances());

/// The same algebra in the basis f_a = sum_b change(b, a) e_b, i.e.
/// [f_a, f_b] = change^{-1} [change_a, change_b]. Coefficients below
/// `drop_below` in magnitude are dropped.
LieAlgebra change_basis(const LieAlgebra& lie, const Matrix& change, double drop_below = 0.0);

/// Block direct sum; summand i occupies the next dim(summand i) coordinates.
LieAlgebra direct_sum(std::string name, const std::vector<LieAlgebra>& summands);

/// Relative SVD cutoff for this algebra: tol.rank * n.
inline double rank_cutoff(const LieAlgebra& lie, const Tolerances& tol) {
  return tol.rank * static_cast<double>(std::max(1, lie.dim()));
}

}  // namespace bimetric
