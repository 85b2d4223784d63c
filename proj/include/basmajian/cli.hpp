#pragma once

#include <ostream>

namespace basmajian {

// Exit codes: 0 ok, 1 other failure, 2 Diverging, 3 degenerate input or no
// root, 4 LostTrack.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace basmajian
