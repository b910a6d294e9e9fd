#pragma once

#include <iosfwd>

namespace dcrn::cli {

/// Process exit codes, one per outcome category.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kAnalysisFailure = 3,
  kIntegrationFailure = 4,
  kVerificationFailed = 5,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcrn::cli
