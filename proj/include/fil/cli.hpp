#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fil {

// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_parse = 1, exit_semantic = 2, exit_budget = 3 };

// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fil
