#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taxel::cli {

enum ExitCode : int { ok = 0, lint_failed = 1, invalid_input = 2, io_error = 3 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taxel::cli
