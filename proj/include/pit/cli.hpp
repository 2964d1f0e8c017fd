#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pit {

/// Exit codes of `pit check`; other commands use 0 / 1 / 2 the same way
/// (success, negative finding, error).
inline constexpr int kExitZero = 0;
inline constexpr int kExitNonZero = 1;
inline constexpr int kExitError = 2;

/// Runs the command line `pit <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pit
