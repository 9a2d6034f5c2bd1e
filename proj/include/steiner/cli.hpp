#pragma once

#include <iosfwd>

namespace steiner {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitVerified = 0,
  kExitRefuted = 1,
  kExitUsage = 2,
  kExitInconclusive = 3,
};

/// Runs one command line; results go to `out` as NDJSON (or CSV), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steiner
