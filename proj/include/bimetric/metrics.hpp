#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bimetric/decompose.hpp"

namespace bimetric {

/// alpha_i with M = sum_i alpha_i (-B_i) on the semisimple part, grouped by
/// isomorphism class in the decomposition's class order.
struct BiInvariantCoordinates {
  struct ClassEntry {
    Fingerprint fingerprint;
    std::vector<double> alphas;
  };
  std::vector<ClassEntry> classes;
  int center_dim = 0;

  int ideal_count() const;
  /// Concatenation of all class blocks.
  Vector flattened() const;
};

/// One factor of a moduli space written as a product.
struct SpaceFactor {
  enum class Kind {
    PositiveReals,        // R+, one non-repeated simple factor
    SymmetricProduct,     // SP^m(R), m isomorphic simple factors
    PositiveSphereQuotient,  // S^{K-1}_+ / (S_m1 x ... ), all factors up to scale
  };
  Kind kind;
  int order = 1;                    // m for SP^m, K for the sphere quotient
  std::vector<int> symmetric_groups;  // m_i > 1 for the sphere quotient

  int dimension() const;
  friend bool operator==(const SpaceFactor&, const SpaceFactor&) = default;
};

/// Product of factors; the empty product is a point.
struct SpaceTerm {
  std::vector<SpaceFactor> factors;

  int dimension() const;
  bool is_point() const { return dimension() == 0; }
  /// Quotient notation, e.g. "SP²(ℝ)" or "𝕊¹₊/S₂".
  std::string symbolic() const;
  /// Homeomorphism type in half-line notation, e.g. "ℝ⁺×ℝ".
  std::string homeomorphic() const;
  /// symbolic(), followed by " ≅ " + homeomorphic() when they differ.
  std::string display() const;
  friend bool operator==(const SpaceTerm&, const SpaceTerm&) = default;
};

/// Log-gap chart for the isometry quotient.
struct ModuliChart {
  struct Scalar {
    double log_alpha;
  };
  /// SP^m(R) ~ R x [0, inf)^{m-1}: log of the smallest alpha, then gaps
  /// between consecutive sorted logs.
  struct SymmetricProduct {
    double base;
    std::vector<double> gaps;
  };
  using Factor = std::variant<Scalar, SymmetricProduct>;

  std::vector<Factor> factors;
  SpaceTerm description;

  /// Flat coordinate vector: per factor, log_alpha or (base, gaps...).
  Vector coordinates() const;
  /// Sorted alpha multisets per class, recovered by cumulative sums.
  std::vector<std::vector<double>> reconstruct() const;
};

/// Unit vector of the full alpha vector (class order, sorted within class).
struct ConformalChart {
  Vector unit_coordinates;
  std::vector<int> class_sizes;
  SpaceTerm description;
};

struct ModuliDescription {
  SpaceTerm bi;
  SpaceTerm ebi;
  bool contractible = true;
};

struct ConformalVerdict {
  bool equivalent = false;
  std::optional<double> lambda;
};

/// Basis of symmetric forms S with S([x,y],z) + S(y,[x,z]) = 0.
std::vector<SymmetricForm> invariant_form_space(const LieAlgebra& lie,
                                                const Tolerances& tol = default_tolerances());

bool is_biinvariant_metric(const LieAlgebra& lie, const Metric& metric,
                           const Tolerances& tol = default_tolerances());

/// sum_i alphas[i] (-B_i) + P_Z^T center_form P_Z, with P_Z the projector
/// onto the center along the ideals. center_form must be positive definite
/// on the center; pass an empty matrix when the center is trivial.
Metric compose_biinvariant_metric(const LieAlgebra& lie, const Decomposition& d,
                                  std::span<const double> alphas, const Matrix& center_form);

/// alpha_i log-uniform in [0.1, 10] plus a random positive definite center
/// block. Throws Error(NotCompactType) if the algebra has no bi-invariant
/// metric.
Metric random_biinvariant_metric(const LieAlgebra& lie, const Decomposition& d,
                                 std::uint64_t seed);

/// Reads alpha_i = M(v,v) / -B(v,v) per ideal and checks that M restricted to
/// the ideal is alpha_i(-B) there. Throws Error(Proportionality) otherwise.
BiInvariantCoordinates metric_coordinates(const LieAlgebra& lie, const Metric& metric,
                                          const Decomposition& d,
                                          const Tolerances& tol = default_tolerances());

/// Sorts each class multiset ascending.
BiInvariantCoordinates canonicalize(BiInvariantCoordinates c);

ModuliChart bi_chart(const BiInvariantCoordinates& canonical);

/// Returns an empty chart described as a point when there are no ideals.
ConformalChart ebi_chart(const BiInvariantCoordinates& canonical);

/// Decomposition plus canonical coordinates of a checked bi-invariant metric.
struct MetricAnalysis {
  Decomposition decomposition;
  BiInvariantCoordinates canonical;
};

/// Throws NotCompactType, DimensionMismatch or NotBiInvariant.
MetricAnalysis analyze_metric(const LieAlgebra& lie, const Metric& metric, std::uint64_t seed,
                              const Tolerances& tol = default_tolerances());

bool isometric(const MetricAnalysis& a, const MetricAnalysis& b,
               const Tolerances& tol = default_tolerances());
bool isometric(const LieAlgebra& lie1, const Metric& m1, const LieAlgebra& lie2, const Metric& m2,
               std::uint64_t seed = 0, const Tolerances& tol = default_tolerances());

/// lambda = |alpha_1| / |alpha_2| when equivalent, so that m1 ~ lambda * m2.
ConformalVerdict conformally_equivalent(const MetricAnalysis& a, const MetricAnalysis& b,
                                        const Tolerances& tol = default_tolerances());
ConformalVerdict conformally_equivalent(const LieAlgebra& lie1, const Metric& m1,
                                        const LieAlgebra& lie2, const Metric& m2,
                                        std::uint64_t seed = 0,
                                        const Tolerances& tol = default_tolerances());

ModuliDescription moduli_description(const Decomposition& d);
/// Throws Error(NotCompactType, "no bi-invariant metric exists ...").
ModuliDescription moduli_description(const LieAlgebra& lie, std::uint64_t seed = 0,
                                     const Tolerances& tol = default_tolerances());

}  // namespace bimetric
