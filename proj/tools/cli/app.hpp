#pragma once

#include <iosfwd>

namespace mqspace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one command line. Results go to `out` (or the --out file), warnings
/// and the one-line error record to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mqspace::cli
