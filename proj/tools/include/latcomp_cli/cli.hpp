#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latcomp::cli {

enum ExitCode : int {
  kOk = 0,             // completable / complete
  kNegative = 1,       // analysis says not completable, or the structured engine refuses
  kPartial = 2,        // some entries left unfilled
  kGenericity = 3,     // a propagation minor degenerated
  kUsage = 64,         // malformed input or bad parameters
  kAmbiguous = 65,     // support branches with no unique circuit
  kInternal = 70,
};

/// Runs one command; `args` excludes the program name. JSON reports go to the
/// --out file when given, to `out` otherwise; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latcomp::cli
