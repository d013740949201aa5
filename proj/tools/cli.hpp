#ifndef HOCOALG_TOOLS_CLI_HPP
#define HOCOALG_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hocoalg::cli {

enum ExitCode : int { kPass = 0, kMathFailure = 1, kInputError = 2 };

/// Runs one command line (without the program name). The JSON result goes
/// to `out` (or to --out), error messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hocoalg::cli

#endif  // HOCOALG_TOOLS_CLI_HPP
