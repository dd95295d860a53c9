#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadeq {

// Runs the command-line front end. Returns 0 on success, 1 on an error verdict or fixture
// failure, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace quadeq
