#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csb::cli {

enum ExitCode : int { kSuccess = 0, kFalse = 1, kInvalidInput = 2, kUndetermined = 3 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace csb::cli
