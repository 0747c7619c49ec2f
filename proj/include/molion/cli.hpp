#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace molion::cli {

/// Exit codes of `run`.
enum ExitCode : int {
    exit_ok = 0,
    exit_physics = 1,  ///< regime, domain or numerical failure
    exit_usage = 2,    ///< bad flags, config or input files
};

/// Runs one subcommand. `args` excludes the program name, e.g.
/// {"rates", "--density", "1e14"}. Data goes to `out` (or --out), diagnostics
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to 9 significant digits and prints the shortest scientific form
/// that reads back to the rounded value.
std::string format_number(double value);

}  // namespace molion::cli
