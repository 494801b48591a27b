#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitred {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Runs the command line (args[0] is the program name). Diagnostics are a
/// single line on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitred
