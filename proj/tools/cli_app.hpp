#pragma once

#include <iosfwd>

namespace heckefield {

// Exit codes: 0 all checks passed, 1 check failures, 2 usage errors,
// 3 I/O or network errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heckefield
