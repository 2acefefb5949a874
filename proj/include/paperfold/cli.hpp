#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace paperfold {

// Runs the paperfold command line. Exit codes: 0 success, 1 validation or
// parse failure, 2 usage error, 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paperfold
