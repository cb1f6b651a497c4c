#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hnp::cli {

enum ExitCode : int { Ok = 0, DomainFailure = 1, Usage = 2, Unknown = 3 };

// Runs one subcommand. args excludes the program name. Results go to out,
// diagnostics and help on usage errors to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Cap escalation used by `global --cap C`: 100, 1000, ... up to C.
std::vector<long long> escalation_caps(long long cap);

}  // namespace hnp::cli
