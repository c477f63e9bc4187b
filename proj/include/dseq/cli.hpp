#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dseq::cli {

enum ExitCode : int {
  kPositive = 0,
  kUsage = 1,
  kNegative = 2,
  kInconclusive = 3,
};

/// Runs one `dseq` invocation. `args` excludes the program name. JSON goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dseq::cli
