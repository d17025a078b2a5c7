#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abelcov::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kBudgetRefused = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelcov::cli
