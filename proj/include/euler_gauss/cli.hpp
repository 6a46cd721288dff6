#ifndef EULER_GAUSS_CLI_HPP
#define EULER_GAUSS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace euler_gauss {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitUnsupported = 3,
  kExitNumericalAbort = 4,
};

/// Runs one command. `args` excludes the program name. Reports go to `out` as JSON,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace euler_gauss

#endif  // EULER_GAUSS_CLI_HPP
