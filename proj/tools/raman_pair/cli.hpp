#pragma once

#include <ostream>

namespace raman_pair {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPhysics = 3;

/// Full command-line entry point; output goes to `out` unless --output is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace raman_pair
