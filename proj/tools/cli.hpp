#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amerta::cli {

enum ExitCode : int { ok = 0, usage = 2, infeasible = 3, internal = 4 };

/// Runs one command line (without the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace amerta::cli
