#pragma once

namespace bimetric {

/// Numerical thresholds shared by the pipeline. Defaults are the values the
/// library is validated against; the CLI `--tol` flag overrides the first
/// three.
struct Tolerances {
  // Relative singular-value cutoff, scaled by the largest singular value and
  // the algebra dimension.
  double rank = 1e-9;
  // Absolute bound on Jacobi cyclic-sum residual entries.
  double jacobi = 1e-9;
  // Bound on |<[x,y],z> + <y,[x,z]>|, relative to max(1, |M|_max).
  double skew = 1e-9;
  double proportional = 1e-8;
  double equal = 1e-8;
  double einstein = 1e-8;
  // Eigenvalue clusters closer than this (relative) are one ideal.
  double cluster_gap = 1e-6;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace bimetric
