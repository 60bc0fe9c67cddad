#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bms::cli {

enum ExitCode : int {
    kOk = 0,
    kDomainFailure = 1,   // infeasible margins, oracle size guard
    kInvalidMatrix = 2,   // check found unequal sums
    kUsage = 64,
    kParse = 65,
};

/// Runs one command line (without the program name), e.g.
/// {"gen", "-n", "5", "-k", "3"}. "-" as a path means stdin/stdout.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace bms::cli
