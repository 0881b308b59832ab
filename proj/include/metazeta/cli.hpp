#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metazeta {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalidArgument = 2,
  kExitResourceLimit = 3,
  kExitVerificationFailed = 4,
};

// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metazeta
