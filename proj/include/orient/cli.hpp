#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orient::cli {

enum ExitCode : int {
    kSuccess = 0,
    kViolation = 1,
    kUsage = 2,
    kInputError = 3,
    kExhausted = 4,
};

/// Runs one command line; args[0] is the program name. Machine output goes to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace orient::cli
