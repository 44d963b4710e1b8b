#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace turan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace turan::cli
