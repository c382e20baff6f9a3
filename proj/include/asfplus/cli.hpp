#pragma once

#include <iostream>

namespace asfplus {

// Exit codes: 0 success, 1 specification error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace asfplus
