#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posred::cli {

/// Process exit codes of the `posred` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,    ///< parse or validation failure
    kExitTooLarge = 2,   ///< subset search over budget
    kExitNegative = 3,   ///< command ran, answer is negative
};

/// Runs one command line (args[0] is the program name). All report output
/// goes to `out` unless --output is given; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posred::cli
