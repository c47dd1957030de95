#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krillsim::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// warnings and the single-line error record to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krillsim::cli
