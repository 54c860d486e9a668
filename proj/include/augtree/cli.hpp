#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace augtree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPlanOnly = 3;

/// Runs the command line (argv without the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace augtree::cli
