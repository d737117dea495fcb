#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftreal::cli {

/// Runs one subcommand.  Returns 0 when every check passes, 1 when any
/// check fails and 2 on a usage or configuration error.  Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftreal::cli
