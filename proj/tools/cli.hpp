#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperslice::cli {

enum ExitCode : int {
  ok = 0,
  usage = 2,        // invalid input, domain errors, bad ranges
  numerical = 3,    // convergence or capacity failures
  certificate = 4,  // a sign condition failed where it is asserted
};

/// Runs one invocation. `args` excludes the program name. JSON or CSV goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperslice::cli
