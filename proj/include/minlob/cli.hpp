#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minlob {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitYes = 0,    // solved / answer yes / certificate valid
  kExitNo = 1,     // no out-branching / answer no / certificate invalid
  kExitInput = 2,  // unreadable or malformed input, bad flags
};

/// Runs the command line `args` (args[0] is the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minlob
