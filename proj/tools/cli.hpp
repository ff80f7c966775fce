#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bkdpp::cli {

/// Exit codes: everything passed, some check failed, bad usage or input.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bkdpp::cli
