#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperbolic::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kUndetermined = 3 };

// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperbolic::cli
