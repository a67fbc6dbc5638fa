#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordtww::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_invalid_input = 2,
  exit_resource_limit = 3,
  exit_internal = 4,
};

/// Runs one subcommand. `args` excludes the program name. Reports go to `out` as
/// key=value lines; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordtww::cli
