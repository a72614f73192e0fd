#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace essval {

enum ExitCode { kExitOk = 0, kExitDisagreement = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace essval
