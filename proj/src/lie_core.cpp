#include "bimetric/lie_core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace bimetric {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Jacobi: return "Jacobi identity violated";
    case ErrorKind::NotCompactType: return "not compact type";
    case ErrorKind::NotPositiveDefinite: return "not positive definite";
    case ErrorKind::NotBiInvariant: return "not bi-invariant";
    case ErrorKind::Proportionality: return "proportionality violation";
    case ErrorKind::DecompositionFailure: return "decomposition failure";
    case ErrorKind::NotBracketClosed: return "not bracket-closed";
    case ErrorKind::DegeneratePlane: return "degenerate plane";
    case ErrorKind::UnknownName: return "unknown name";
  }
  return "error";
}

namespace detail {

void check_length(const LieAlgebra& lie, Eigen::Index len, const char* what) {
  if (len != lie.dim()) {
    std::ostringstream msg;
    msg << what << " has length " << len << ", algebra dimension is " << lie.dim();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

}  // namespace detail

LieAlgebra::LieAlgebra(std::string name, int dim, const BracketTable& table)
    : name_(std::move(name)), dim_(dim) {
  if (dim <= 0) throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
  auto in_range = [dim](int v) { return v >= 0 && v < dim; };

  for (const auto& [pair, terms] : table) {
    auto [i, j] = pair;
    if (!in_range(i) || !in_range(j) || i == j) {
      std::ostringstream msg;
      msg << "invalid bracket pair (" << i << ", " << j << ") for dimension " << dim;
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    const double sign = i < j ? 1.0 : -1.0;
    auto& dst = table_[{std::min(i, j), std::max(i, j)}];
    for (const auto& term : terms) {
      if (!in_range(term.index)) {
        std::ostringstream msg;
        msg << "bracket term index " << term.index << " out of range for dimension " << dim;
        throw Error(ErrorKind::DimensionMismatch, msg.str());
      }
      auto it = std::find_if(dst.begin(), dst.end(),
                             [&](const BracketTerm& t) { return t.index == term.index; });
      if (it == dst.end()) {
        dst.push_back({term.index, sign * term.coeff});
      } else {
        it->coeff += sign * term.coeff;
      }
    }
  }
  for (auto it = table_.begin(); it != table_.end();) {
    auto& terms = it->second;
    std::erase_if(terms, [](const BracketTerm& t) { return t.coeff == 0.0; });
    std::sort(terms.begin(), terms.end(),
              [](const BracketTerm& a, const BracketTerm& b) { return a.index < b.index; });
    it = terms.empty() ? table_.erase(it) : std::next(it);
  }

  ad_basis_.assign(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
  for (const auto& [pair, terms] : table_) {
    auto [i, j] = pair;
    for (const auto& term : terms) {
      ad_basis_[static_cast<std::size_t>(i)](term.index, j) += term.coeff;
      ad_basis_[static_cast<std::size_t>(j)](term.index, i) -= term.coeff;
    }
  }
}

std::vector<JacobiViolation> validate_jacobi(const LieAlgebra& lie, const Tolerances& tol) {
  std::vector<JacobiViolation> out;
  const int n = lie.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector eij = lie.basis_bracket(i, j);
      for (int k = j + 1; k < n; ++k) {
        // [[e_i,e_j],e_k] = -ad(e_k)[e_i,e_j]
        const Vector cyc = -lie.ad_basis(k) * eij - lie.ad_basis(i) * lie.basis_bracket(j, k) -
                           lie.ad_basis(j) * lie.basis_bracket(k, i);
        const double residual = cyc.size() ? cyc.cwiseAbs().maxCoeff() : 0.0;
        if (residual > tol.jacobi) out.push_back({i, j, k, residual});
      }
    }
  }
  return out;
}

SymmetricForm::SymmetricForm(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "symmetric form must be square");
  }
  if (!entries.allFinite()) throw Error(ErrorKind::Parse, "symmetric form has non-finite entries");
  entries_ = symmetrized(entries);
}

double SymmetricForm::max_eigenvalue() const {
  if (dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double SymmetricForm::min_eigenvalue() const {
  if (dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Metric::Metric(const SymmetricForm& form, const Tolerances& tol) : form_(form) {
  const double floor = tol.rank * std::max(1.0, max_abs(form.matrix()));
  const double lo = form.min_eigenvalue();
  if (!(lo > floor)) {
    std::ostringstream msg;
    msg << "metric is not positive definite (smallest eigenvalue " << lo << ")";
    throw Error(ErrorKind::NotPositiveDefinite, msg.str());
  }
}

Metric Metric::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "scale must be positive");
  return Metric(lambda * form_);
}

Subspace::Subspace(const Matrix& basis) {
  if (basis.cols() == 0) {
    basis_ = basis;
    return;
  }
  Eigen::HouseholderQR<Matrix> qr(basis);
  basis_ = qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
}

Subspace Subspace::span(const Matrix& columns, double relative_cutoff) {
  return from_orthonormal(column_space(columns, relative_cutoff));
}

Subspace Subspace::from_orthonormal(Matrix basis) {
  Subspace s;
  s.basis_ = std::move(basis);
  return s;
}

SymmetricForm killing_form(const LieAlgebra& lie) {
  const int n = lie.dim();
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // trace(A B) = sum of elementwise A .* B^T
      b(i, j) = lie.ad_basis(i).cwiseProduct(lie.ad_basis(j).transpose()).sum();
      b(j, i) = b(i, j);
    }
  }
  return SymmetricForm(b);
}

double skew_adjoint_residual(const LieAlgebra& lie, const SymmetricForm& form) {
  if (form.dim() != lie.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "form dimension does not match algebra");
  }
  double worst = 0.0;
  for (int i = 0; i < lie.dim(); ++i) {
    // entry (j, k) = M(ad_i e_j, e_k) + M(e_j, ad_i e_k)
    const Matrix& ad = lie.ad_basis(i);
    const Matrix r = ad.transpose() * form.matrix() + form.matrix() * ad;
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

bool is_skew_adjoint_all(const LieAlgebra& lie, const Metric& metric, const Tolerances& tol) {
  const double residual = skew_adjoint_residual(lie, metric.form());
  return residual <= tol.skew * std::max(1.0, max_abs(metric.matrix()));
}

Subspace center(const LieAlgebra& lie, const Tolerances& tol) {
  const int n = lie.dim();
  Matrix stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    stacked.col(i) = lie.ad_basis(i).reshaped();
  }
  return Subspace::from_orthonormal(null_space(stacked, rank_cutoff(lie, tol)));
}

Subspace derived_subalgebra(const LieAlgebra& lie, const Tolerances& tol) {
  const int n = lie.dim();
  Matrix cols(n, n * (n - 1) / 2);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) cols.col(c++) = lie.basis_bracket(i, j);
  }
  return Subspace::span(cols, rank_cutoff(lie, tol));
}

LieAlgebra change_basis(const LieAlgebra& lie, const Matrix& change, double drop_below) {
  const int n = lie.dim();
  if (change.rows() != n || change.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "change of basis must be n x n");
  }
  const auto lu = change.fullPivLu();
  if (!lu.isInvertible()) throw Error(ErrorKind::DimensionMismatch, "change of basis is singular");
  BracketTable table;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Vector coords = lu.solve(bracket(lie, change.col(a), change.col(b)));
      std::vector<BracketTerm> terms;
      for (int k = 0; k < n; ++k) {
        if (std::abs(coords(k)) > drop_below) terms.push_back({k, coords(k)});
      }
      if (!terms.empty()) table[{a, b}] = std::move(terms);
    }
  }
  return LieAlgebra(lie.name(), n, table);
}

LieAlgebra direct_sum(std::string name, const std::vector<LieAlgebra>& summands) {
  BracketTable table;
  int offset = 0;
  for (const auto& s : summands) {
    for (const auto& [pair, terms] : s.table()) {
      auto& dst = table[{pair.first + offset, pair.second + offset}];
      for (const auto& t : terms) dst.push_back({t.index + offset, t.coeff});
    }
    offset += s.dim();
  }
  return LieAlgebra(std::move(name), offset, table);
}

}  // namespace bimetric
