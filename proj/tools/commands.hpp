#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divcar::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kUnknownKeyword = 3,
  kInfeasibleQuery = 4,
  kInternalError = 5,
};

/// Runs one CLI invocation. `args` excludes the program name. Machine output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divcar::cli
