#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caldist::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNotCalibrated = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kRefused = 3;
inline constexpr int kInternalError = 4;

// Runs one command. `args` excludes the program name. Standard input and
// output are replaced by `in` and `out` when no file is named.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace caldist::cli
