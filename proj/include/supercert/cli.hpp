#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supercert {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvalid = 2 };

/// Runs one subcommand; argv[0] is the program name. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace supercert
