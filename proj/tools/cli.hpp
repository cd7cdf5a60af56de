#pragma once

#include <iosfwd>

namespace csync::cli {

enum ExitCode : int {
  kAnswered = 0,
  kUsage = 2,
  kBudget = 3,
  kInvalidInput = 4,
};

/// Entry point of the `csync` tool; writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csync::cli
