#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wovf::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

// Runs the command line `args` (without the program name).  Reports go to
// `out`, diagnostics to `err`; "-" as an output path means `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wovf::cli
