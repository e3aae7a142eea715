#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fncohom::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFailed = 2;  // failed certificate or verification

/// Environment variable that overrides the default product budget.
inline constexpr const char* kBudgetEnv = "FNCOHOM_BUDGET";

/// Runs one command line.  args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fncohom::cli
