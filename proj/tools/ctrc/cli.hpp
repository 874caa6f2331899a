#pragma once

#include <iosfwd>

namespace ctrc::cli {

// Exit codes: 0 success or PASS, 1 validation failure or FAIL, 2 usage
// error, 3 budget exhausted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctrc::cli
