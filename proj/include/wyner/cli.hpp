// Command-line front end. Data goes to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 verification failure, 2 invalid input.
#pragma once

#include <ostream>

namespace wyner {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wyner
