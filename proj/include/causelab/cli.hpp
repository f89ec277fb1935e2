#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causelab {

// Runs one CLI command. `args` excludes the program name. Exit codes: 0 all
// checks passed, 1 completed with violations or findings, 2 usage or input
// error, 3 internal consistency failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causelab
