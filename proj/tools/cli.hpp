#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwl::cli {

/// Runs one `rwl` subcommand. `args` excludes the program name. Returns the
/// process exit status: 0 on success, the failing suite's code otherwise, 64
/// for usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rwl::cli
