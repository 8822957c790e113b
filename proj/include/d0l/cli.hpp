#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace d0l::cli {

enum ExitCode : int {
    ok = 0,
    internal_failure = 1,
    usage_error = 2,
    resource_exceeded = 3,
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace d0l::cli
