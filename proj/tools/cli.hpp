#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plausctl {

/// Runs one command line. Returns 0 when every check passes, 1 when any
/// fails, 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plausctl
