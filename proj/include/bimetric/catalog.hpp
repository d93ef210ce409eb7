#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bimetric/lie_core.hpp"

namespace bimetric {

/// Ground truth the pipeline must reproduce for a catalog algebra.
struct ExpectedProperties {
  bool compact_type = true;
  int center_dim = 0;
  std::vector<int> ideal_dims;   // ascending
  std::vector<int> class_sizes;  // in class (fingerprint) order
  int invariant_form_dim = 0;
  std::string bi_description;   // SpaceTerm::display(), or "none"
  std::string ebi_description;
};

struct CatalogEntry {
  std::string name;
  LieAlgebra algebra;
  ExpectedProperties expected;
  std::string summary;
};

/// Names listed by `catalog list`. builtin() also accepts abelian<n>
/// (1 <= n <= 32), su2_k<k> (1 <= k <= 8) and su2_lambda<positive number>.
std::vector<std::string> builtin_names();

/// Throws Error(UnknownName) for anything else.
CatalogEntry builtin(std::string_view name);

/// Structure constants of the matrix Lie algebra spanned by `basis` under the
/// commutator, solved against the basis (real and imaginary parts stacked).
/// Coefficients within 1e-9 of an integer are snapped to it.
LieAlgebra from_matrix_basis(std::string name, const std::vector<Eigen::MatrixXcd>& basis);

}  // namespace bimetric
