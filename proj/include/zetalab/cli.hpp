#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetalab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Version line printed by `--version`.
std::string version_string();

/// Runs one command line (without the program name). Data goes to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli
