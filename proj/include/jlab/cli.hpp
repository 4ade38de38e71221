#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jlab::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kInvalidInput = 2,
    kNonConvergence = 3,
};

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// a single JSON document (or CSV) to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace jlab::cli
