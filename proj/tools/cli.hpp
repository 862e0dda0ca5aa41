#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperprox::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kCap = 3 };

/// Runs one command line (without argv[0]) and returns the exit status.
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperprox::cli
