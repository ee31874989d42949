#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "octa/report.hpp"

namespace octa {

/// Runs one CLI invocation (args excludes the program name). Writes the
/// report to `out` and diagnostics to `err`; returns the exit code:
/// 0 success, 1 mathematical failure, 2 input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace octa
