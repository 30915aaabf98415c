#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cotwin::cli {

// Exit codes of the command line tool.
inline constexpr int kPass = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kInputError = 3;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cotwin::cli
