#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinstar::cli {

enum ExitCode : int { kSuccess = 0, kInvalidArguments = 2, kNumericalViolation = 3 };

// Runs one command line (args excludes the program name). Normal output goes
// to `out` unless --output redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinstar::cli
