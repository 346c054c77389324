#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polymer::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kValidationFailed = 2,
  kUsageError = 3,
  kBudgetExceeded = 4,
};

/// Parses argv and runs one subcommand. Never throws.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Nearest candidate by edit distance, or empty when nothing is close.
std::string nearest(const std::string& word, const std::vector<std::string>& candidates);

}  // namespace polymer::cli
