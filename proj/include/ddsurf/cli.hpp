#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ddsurf {

/// Runs the command-line front end. Exit codes: 0 all checks pass, 1 a
/// mathematical check failed or a construction was refused, 2 input or usage
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddsurf
