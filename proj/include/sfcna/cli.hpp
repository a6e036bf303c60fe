#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfcna {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitViolations = 1, kExitUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sfcna
