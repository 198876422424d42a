#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maglap::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParameter = 2,
  kNumerical = 3,
  kVerification = 4,
};

/// Entry point behind tools/maglap. `args` excludes the program name. Tables go
/// to `out`, diagnostics and (when no path is given) the run manifest to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maglap::cli
