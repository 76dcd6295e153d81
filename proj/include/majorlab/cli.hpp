#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace majorlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// verify: at least one suite reported a failure.
  kExitFailures = 1,
  /// Bad arguments, invalid parameters, malformed input files.
  kExitUsage = 2,
  kExitIo = 3,
};

/// Runs one command line (without the program name). JSON goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace majorlab
