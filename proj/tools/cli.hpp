#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bohr::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNoRoot = 2,
    kVerificationFailure = 3,
    kAccuracy = 4,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1", "1,2,4", "1..3" (unit step) or "0.5..2:0.5". Values are sorted and
/// deduplicated. Throws std::invalid_argument on malformed input.
std::vector<double> parse_range(const std::string& text);

}  // namespace bohr::cli
