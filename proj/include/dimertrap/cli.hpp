#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimertrap::cli {

/// Command-line front end. `args` excludes the program name. Exit status:
/// 0 success, 1 configuration or usage error (nothing written), 2 numerical
/// failure (partial outputs written and flagged).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dimertrap::cli
