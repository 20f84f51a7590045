#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuntz::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kInputError = 2;
inline constexpr int kCrossCheckMismatch = 3;

/// Runs the command line; args[0] is the program name. Reports go to `out`
/// (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuntz::cli
