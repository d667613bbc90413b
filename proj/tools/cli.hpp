#pragma once

#include <ostream>

namespace factorix::cli {

inline constexpr const char *kToolVersion = "0.1.0";

/// Runs one factorix command line. Exit codes: 0 success or verified,
/// 1 negative verdict, 2 input error, 3 budget exhausted.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace factorix::cli
