#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smoothpoly {

/// Runs the smoothpoly command line on args (without the program name).
/// Returns 0 on success, 1 on usage or budget errors, 2 when a verified
/// identity fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smoothpoly
