#pragma once
// Command-line front end. Runs in-process so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace repulse {

enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,
    exit_invalid = 2,
    exit_solver = 3,
    exit_inconclusive = 4,
    exit_not_converged = 5,
};

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repulse
