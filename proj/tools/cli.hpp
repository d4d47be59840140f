#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corrbreak::cli {

/// Exit codes of the command-line tool.
enum Exit : int { Ok = 0, InputFailure = 2, NumericalFailure = 3 };

/// Runs the tool on `args` (program name excluded), writing to `out` and `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrbreak::cli
