#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mediumband {

/// Exit codes of the command-line frontend.
enum ExitCode : int { kExitOk = 0, kExitValidationFailed = 1, kExitUsage = 2 };

/// Runs one CLI invocation; args excludes the program name. Results go to out
/// (or to --out files), diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mediumband
