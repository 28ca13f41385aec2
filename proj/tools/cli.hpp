#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmprime::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kInternal = 3,
};

/// Runs one invocation, e.g. {"primes", "--modulus", "5", "--max", "100"}.
/// The program name is not part of `args`. Results go to `out` (or to the
/// file named by --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats to 6 significant digits and parses back, so JSON output is stable.
double round_sig6(double value);

}  // namespace gmprime::cli
