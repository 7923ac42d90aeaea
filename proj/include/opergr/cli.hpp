#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opergr {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,        ///< parse or usage error
    kExitPrecondition = 3, ///< input violates a precondition of the requested computation
    kExitInternal = 4,     ///< an identity that must hold failed
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace opergr
