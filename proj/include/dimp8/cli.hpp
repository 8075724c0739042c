#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimp8 {

/// Exit codes of every subcommand.
inline constexpr int kExitFound = 0;
inline constexpr int kExitNone = 1;
inline constexpr int kExitError = 2;

/// Runs the dimp8 command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimp8
