#pragma once

#include <stdexcept>
#include <string>

namespace bimetric {

enum class ErrorKind {
  DimensionMismatch,
  Parse,
  Jacobi,
  NotCompactType,
  NotPositiveDefinite,
  NotBiInvariant,
  Proportionality,
  DecompositionFailure,
  NotBracketClosed,
  DegeneratePlane,
  UnknownName,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable failure category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bimetric
