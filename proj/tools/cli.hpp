#pragma once

#include <iosfwd>

namespace bour::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kUsageError = 2;

// Entry point of the bour-edge tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bour::cli
