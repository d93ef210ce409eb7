#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bimetric::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kParseError = 2,
  kJacobiFailure = 3,
  kNotCompactType = 4,
  kNotPositiveDefinite = 5,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; a path of "-" reads `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace bimetric::cli
