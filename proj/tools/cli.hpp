#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polarimeter::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kInternalError = 2;

// Runs one command line (args exclude the program name). Reports go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarimeter::cli
