#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sea::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the seatool command line. `args` excludes the program
/// name. Reports go to `out`, diagnostics and --timing to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sea::cli
