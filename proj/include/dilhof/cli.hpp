#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dilhof::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDied = 2,
  kVerifierFailed = 3,
};

/// Entry point. `args` excludes the program name. Data goes to `out`
/// (or the --out file), diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace dilhof::cli
