#pragma once

#include <iosfwd>
#include <string>

#include "bimetric/lie_core.hpp"

namespace bimetric::io {

/// Parses the algebra document
///   {"name": str, "dim": int, "brackets": [{"i": int, "j": int,
///    "terms": [[k, c], ...]}, ...]}   with i < j.
/// Throws Error(Parse) on malformed input.
LieAlgebra parse_algebra(const std::string& text);

std::string algebra_to_json(const LieAlgebra& lie);

/// Parses {"matrix": [[...], ...]} into an n x n matrix. Asymmetry above
/// 1e-12 is reported on `warnings` and removed by symmetrization. Throws
/// Error(Parse) on malformed input.
Matrix parse_metric_matrix(const std::string& text, std::ostream& warnings);

std::string metric_to_json(const Matrix& m);

/// Whole file, or standard input for "-".
std::string read_text(const std::string& path, std::istream& standard_input);

}  // namespace bimetric::io
