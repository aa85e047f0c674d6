#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfe::cli {

/// Runs the command-line dispatcher on `args` (without the program name).
/// Exit codes: 0 success, 1 domain error (the error name is printed), 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfe::cli
