#pragma once

// Command-line front end. Exit codes: 0 check passed or evaluation done,
// 1 violation found (report emitted), 2 usage or parse error.

#include <ostream>
#include <string>
#include <vector>

namespace psc::cli {

inline constexpr int kPass = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsageError = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psc::cli
