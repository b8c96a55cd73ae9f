#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genlambert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitUsage = 64;

/// Parses argv (without the program name) and runs one subcommand:
/// genw | rlambert | series | langevin-inv | dispersion | dde | doublewell | classicw.
/// Writes one JSON record (or bare numbers under --plain) to out only on
/// success; errors go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genlambert::cli
