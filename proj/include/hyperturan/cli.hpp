#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperturan {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitBudgetExhausted = 2,
  kExitBadInput = 3,
};

/// Runs the tool on args (without the program name). Results go to out, or
/// to the --output file; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperturan
