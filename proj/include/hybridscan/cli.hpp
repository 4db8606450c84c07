/// cli.hpp — command-line driver, separated from main() for testability.
#pragma once

#include <iosfwd>

namespace hybridscan {

// Exit codes: 0 clean, 1 runtime error, 2 scan found vulnerable apps,
// 64 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, bool color = false);

}  // namespace hybridscan
