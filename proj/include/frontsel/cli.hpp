#ifndef FRONTSEL_CLI_HPP
#define FRONTSEL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace frontsel::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kInfeasible = 3,
};

/// Runs the command line `args` (args[0] is the program name). Human-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace frontsel::cli

#endif  // FRONTSEL_CLI_HPP
