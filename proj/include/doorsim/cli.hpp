#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace doorsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `doorsim` tool. `args` excludes the program name.
/// Traces and reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace doorsim::cli
