#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace legz::cli {

// Runs the command-line tool on the given arguments (without the program
// name), writing results to `out` and usage errors to `err`.  Returns the
// process exit code: 0 success / affirmative, 1 negative result, 2 usage or
// input error, 3 internal invariant fault.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace legz::cli
