#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bimetric/lie_core.hpp"

namespace bimetric {

/// Isomorphism invariant of a compact simple ideal: dimension, rank and the
/// multiset of squared root lengths (both signs), normalized so the shortest
/// root has squared length 1 and rounded to 6 decimals.
struct Fingerprint {
  int dim = 0;
  int rank = 0;
  std::vector<double> root_profile;
  int root_count = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  /// Orders by (dim, rank, root_profile); root_count follows from dim - rank.
  friend std::weak_ordering operator<=>(const Fingerprint& a, const Fingerprint& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.root_profile.begin(), a.root_profile.end(), b.root_profile.begin(),
        b.root_profile.end(), [](double x, double y) { return std::weak_order(x, y); });
  }
};

std::string to_string(const Fingerprint& fp);

struct Ideal {
  Subspace space;
  Fingerprint fingerprint;
};

/// g = Z(g) + a_1 + ... + a_k with the a_i grouped into isomorphism classes.
struct Decomposition {
  Subspace center;
  std::vector<Ideal> ideals;
  // Ideal indices per class, classes ordered by fingerprint.
  std::vector<std::vector<int>> classes;

  int ambient_dim() const { return center.ambient_dim(); }
  std::vector<int> class_sizes() const;
  std::vector<int> ideal_dims() const;
};

struct CompactTypeReport {
  bool is_compact_type = false;
  std::string reason;
};

/// g = [g,g] + Z(g) with trivial intersection and the Killing form negative
/// definite on [g,g].
CompactTypeReport compact_type_check(const LieAlgebra& lie,
                                     const Tolerances& tol = default_tolerances());

/// Basis of the maps M on S (in the orthonormal coordinates of S.basis())
/// commuting with every ad(x)|_S, x in S. Throws Error(NotBracketClosed)
/// if S is not a subalgebra.
std::vector<Matrix> commutant_basis(const LieAlgebra& lie, const Subspace& subalgebra,
                                    const Tolerances& tol = default_tolerances());

/// Splits a compact-type algebra into its center and simple ideals, computes
/// fingerprints and groups them. Deterministic for a given seed.
///
/// A random commutant element acts as a distinct scalar on each simple ideal,
/// so its eigenspaces (taken in the -B inner product, where the element is
/// symmetric) are the ideals. Draws are retried up to 8 times.
Decomposition simple_ideals(const LieAlgebra& lie, std::uint64_t seed,
                            const Tolerances& tol = default_tolerances());

/// Minimum centralizer dimension inside the ideal over 4 random elements.
int cartan_rank(const LieAlgebra& lie, const Subspace& ideal, std::uint64_t seed,
                const Tolerances& tol = default_tolerances());

/// Root-length fingerprint of a compact simple ideal.
Fingerprint root_fingerprint(const LieAlgebra& lie, const Subspace& ideal, std::uint64_t seed,
                             const Tolerances& tol = default_tolerances());

/// Fills `classes` by fingerprint equality, ordered by fingerprint.
Decomposition group_by_isomorphism(Decomposition d);

/// Projectors along the direct sum: element 0 onto the center, element i + 1
/// onto ideal i. They sum to the identity.
std::vector<Matrix> summand_projectors(const Decomposition& d);

/// Killing form of ideal i, extended by zero on the other summands.
SymmetricForm ideal_killing_form(const LieAlgebra& lie, const Decomposition& d, int ideal);

}  // namespace bimetric
