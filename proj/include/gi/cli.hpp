#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gi::cli {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Results and
/// diagnostics go to `out` and `err`; data files and the run manifest go to
/// the directory given by --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gi::cli
