#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace charvar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Runs one command line (without the program name). Output goes to `out`
/// unless --out names a file; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charvar::cli
