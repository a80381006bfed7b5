#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohom1::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNoConvergence = 3,
  kEscaped = 4,
};

/// Runs the tool on `args` (args[0] is the program name). Results go to
/// `out` unless redirected with --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace cohom1::cli
