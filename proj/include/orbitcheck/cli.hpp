#pragma once

// The orbitcheck command line. Exit codes: 0 success or expected match, 1 verdict
// mismatch or violated invariant, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace orbitcheck {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitcheck
