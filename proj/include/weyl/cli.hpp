#pragma once

// Command-line front end: normalize, act, bracket, probe, verify.

#include <ostream>
#include <string>
#include <vector>

namespace weyl {

enum ExitCode : int { exit_ok = 0, exit_mismatch = 1, exit_usage = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weyl
