#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vnim::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_mismatch = 2,
    exit_budget = 3,
};

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vnim::cli
