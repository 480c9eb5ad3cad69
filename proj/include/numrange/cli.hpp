#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace numrange {

/// Command-line front end. Exit codes: 0 success, 1 verification or
/// selftest failure, 2 usage error, 3 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

} // namespace numrange
