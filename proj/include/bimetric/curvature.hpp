#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bimetric/lie_core.hpp"

namespace bimetric {

struct CurvatureReport {
  SymmetricForm ricci;
  double scalar = 0.0;
  double min_sectional_sampled = 0.0;
  std::optional<std::pair<Vector, Vector>> zero_plane;
  std::optional<double> einstein_constant;
  bool flat = false;
  // Sectional curvature of each sampled plane, in sampling order.
  std::vector<double> samples;
};

// Every entry point checks that the metric is bi-invariant and throws
// Error(NotBiInvariant) otherwise: the formulas below only hold then.

/// kappa(x, y) = <R_xy x, y> = |[x, y]|^2 / 4.
double kappa(const LieAlgebra& lie, const Metric& metric, const Vector& x, const Vector& y,
             const Tolerances& tol = default_tolerances());

/// kappa divided by the squared area of the plane; throws
/// Error(DegeneratePlane) when the Gram determinant is not positive.
double sectional(const LieAlgebra& lie, const Metric& metric, const Vector& x, const Vector& y,
                 const Tolerances& tol = default_tolerances());

/// Ric(x, x) = sum_j kappa(x, u_j) over an M-orthonormal basis, polarized.
SymmetricForm ricci_form(const LieAlgebra& lie, const Metric& metric,
                         const Tolerances& tol = default_tolerances());

double scalar_curvature(const LieAlgebra& lie, const Metric& metric,
                        const Tolerances& tol = default_tolerances());

/// Samples `samples` random planes, exhibits a flat plane from the splitting
/// when one exists, and tests Ric = c M.
CurvatureReport positivity_probe(const LieAlgebra& lie, const Metric& metric, int samples,
                                 std::uint64_t seed, const Tolerances& tol = default_tolerances());

}  // namespace bimetric
