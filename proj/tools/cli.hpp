#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ept::cli {

/// Exit codes of the ept tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // bad input file, invalid data
inline constexpr int kExitUsage = 2;    // unknown command/flag, bad value

/// Runs one ept command. args excludes the program name. Normal output goes
/// to out; diagnostics (one line) to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace ept::cli
