#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spreadlab {

// Runs one CLI invocation; returns the process exit code:
// 0 success, 1 error, 2 success with precondition-violation warnings.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spreadlab
