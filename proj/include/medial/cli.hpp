#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace medial::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kCoverageFailed = 1,
  kConfigError = 2,
  kIoError = 3,
  kBudgetExceeded = 4,
  kNotConvex = 5,
};

/// Runs `medial <subcommand> <config.json> [options]`; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medial::cli
