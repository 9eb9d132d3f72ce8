#pragma once

#include <iosfwd>

namespace lcd {

/// Exit codes of the bench tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitAllFailed = 3 };

/// Entry point of the bench tool; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcd
