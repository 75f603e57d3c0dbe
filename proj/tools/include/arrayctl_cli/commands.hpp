#pragma once

#include <iosfwd>

namespace arrayctl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,      // unreadable, malformed or invalid spec; bad flags
  kNumericalError = 2,  // spectral or solver breakdown, internal consistency failure
  kDisagreement = 3,    // an oracle disagreed with the analysis
};

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arrayctl::cli
