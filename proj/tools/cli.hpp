#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace refquest::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit code: 0 on success, 1 on runtime errors, 2 on flag errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace refquest::cli
