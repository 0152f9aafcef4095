#pragma once
// Command-line front end, callable in-process so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace qdeform::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kSolverFailure = 3,
  kLevelNotFound = 4,
};

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

//! QDEFORM_THREADS, 0 or unset meaning hardware concurrency. Throws
//! ConfigError on a malformed value.
unsigned thread_cap();

} // namespace qdeform::cli
