#include "bimetric/curvature.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <random>

#include "bimetric/decompose.hpp"

namespace bimetric {

namespace {

void require_biinvariant(const LieAlgebra& lie, const Metric& metric, const Tolerances& tol) {
  if (metric.dim() != lie.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "metric dimension does not match algebra");
  }
  if (!is_skew_adjoint_all(lie, metric, tol)) {
    throw Error(ErrorKind::NotBiInvariant, "curvature formulas require a bi-invariant metric");
  }
}

double kappa_unchecked(const LieAlgebra& lie, const Metric& metric, const Vector& x,
                       const Vector& y) {
  const Vector b = bracket(lie, x, y);
  return 0.25 * metric(b, b);
}

double sectional_unchecked(const LieAlgebra& lie, const Metric& metric, const Vector& x,
                           const Vector& y) {
  const double gram = metric(x, x) * metric(y, y) - metric(x, y) * metric(x, y);
  const double scale = metric(x, x) * metric(y, y);
  if (!(gram > 1e-12 * scale) || !(scale > 0.0)) {
    throw Error(ErrorKind::DegeneratePlane, "x and y do not span a 2-plane");
  }
  return kappa_unchecked(lie, metric, x, y) / gram;
}

// Columns form an M-orthonormal basis.
Matrix orthonormal_frame(const Metric& metric) {
  Eigen::LLT<Matrix> llt(metric.matrix());
  const Matrix lower = llt.matrixL();
  return lower.transpose().triangularView<Eigen::Upper>().solve(
      Matrix::Identity(metric.dim(), metric.dim()));
}

SymmetricForm ricci_unchecked(const LieAlgebra& lie, const Metric& metric) {
  const int n = lie.dim();
  const Matrix frame = orthonormal_frame(metric);
  auto ric_diag = [&](const Vector& x) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += kappa_unchecked(lie, metric, x, frame.col(j));
    return s;
  };
  Matrix ric(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector ei = Vector::Unit(n, i);
    ric(i, i) = ric_diag(ei);
    for (int k = i + 1; k < n; ++k) {
      const Vector ek = Vector::Unit(n, k);
      ric(i, k) = 0.25 * (ric_diag(ei + ek) - ric_diag(ei - ek));
      ric(k, i) = ric(i, k);
    }
  }
  return SymmetricForm(ric);
}

double trace_against(const Metric& metric, const SymmetricForm& form) {
  const Matrix frame = orthonormal_frame(metric);
  return (frame.transpose() * form.matrix() * frame).trace();
}

}  // namespace

double kappa(const LieAlgebra& lie, const Metric& metric, const Vector& x, const Vector& y,
             const Tolerances& tol) {
  require_biinvariant(lie, metric, tol);
  return kappa_unchecked(lie, metric, x, y);
}

double sectional(const LieAlgebra& lie, const Metric& metric, const Vector& x, const Vector& y,
                 const Tolerances& tol) {
  require_biinvariant(lie, metric, tol);
  detail::check_length(lie, x.size(), "sectional: x");
  detail::check_length(lie, y.size(), "sectional: y");
  return sectional_unchecked(lie, metric, x, y);
}

SymmetricForm ricci_form(const LieAlgebra& lie, const Metric& metric, const Tolerances& tol) {
  require_biinvariant(lie, metric, tol);
  return ricci_unchecked(lie, metric);
}

double scalar_curvature(const LieAlgebra& lie, const Metric& metric, const Tolerances& tol) {
  require_biinvariant(lie, metric, tol);
  return trace_against(metric, ricci_unchecked(lie, metric));
}

CurvatureReport positivity_probe(const LieAlgebra& lie, const Metric& metric, int samples,
                                 std::uint64_t seed, const Tolerances& tol) {
  require_biinvariant(lie, metric, tol);
  const int n = lie.dim();
  CurvatureReport report;
  report.ricci = ricci_unchecked(lie, metric);
  report.scalar = trace_against(metric, report.ricci);
  report.flat = lie.is_abelian();

  if (n >= 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double lowest = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
      Vector x(n), y(n);
      for (int i = 0; i < n; ++i) x(i) = normal(rng);
      for (int i = 0; i < n; ++i) y(i) = normal(rng);
      x /= std::sqrt(metric(x, x));
      y -= metric(x, y) * x;
      y /= std::sqrt(metric(y, y));
      const double k = kappa_unchecked(lie, metric, x, y);
      report.samples.push_back(k);
      lowest = std::min(lowest, k);
    }
    // No planes sampled: nothing below zero was observed.
    report.min_sectional_sampled = samples > 0 ? lowest : 0.0;

    // One direction from each of two commuting summands.
    const Decomposition d = simple_ideals(lie, seed, tol);
    std::vector<Vector> directions;
    for (Eigen::Index c = 0; c < d.center.dim(); ++c) directions.push_back(d.center.basis().col(c));
    for (const auto& ideal : d.ideals) directions.push_back(ideal.space.basis().col(0));
    if (directions.size() >= 2) report.zero_plane = std::make_pair(directions[0], directions[1]);
  }

  const double c = trace_against(metric, report.ricci) / n;
  const double scale = std::max(max_abs(report.ricci.matrix()), std::abs(c) * max_abs(metric.matrix()));
  if (max_abs(report.ricci.matrix() - c * metric.matrix()) <= tol.einstein * std::max(scale, 1e-300) ||
      scale == 0.0) {
    report.einstein_constant = c;
  }
  return report;
}

}  // namespace bimetric
