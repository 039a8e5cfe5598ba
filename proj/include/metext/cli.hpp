#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace metext {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitSuiteFailure = 2,
  kExitInternal = 3,
  kExitUsage = 64,
};

/// Runs one command line (without the program name).
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metext
