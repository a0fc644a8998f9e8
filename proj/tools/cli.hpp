#pragma once

#include <iosfwd>

namespace benford::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNonConvergence = 3;

/// Parses argv, runs exactly one subcommand and writes its output to `out`.
/// Diagnostics and usage go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace benford::cli
