#pragma once

#include <iosfwd>

namespace cyent::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kNonConvergence = 2;
inline constexpr int kInvariantViolation = 3;

// Entry point behind the cy-entropy executable. Reports go to `out` (or to
// --output), diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace cyent::cli
