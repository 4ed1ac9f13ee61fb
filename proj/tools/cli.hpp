#pragma once

#include <iosfwd>

namespace cohomoforge::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_inconclusive = 2;
inline constexpr int exit_usage = 64;

// argv[0] is the program name
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cohomoforge::cli
