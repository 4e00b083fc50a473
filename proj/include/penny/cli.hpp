#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace penny::cli {

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or --out), error objects to `err`. Exit status: 0 success,
/// 1 validation, 2 non-convergence, 3 I/O.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace penny::cli
