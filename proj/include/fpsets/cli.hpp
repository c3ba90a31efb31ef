#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpsets {

// Exit codes shared by the binary and the in-process runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitInconclusive = 4;
inline constexpr int kExitTheorem = 5;
inline constexpr int kExitInvalid = 6;
inline constexpr int kExitInternal = 7;

/// Runs the command line tool in-process; arguments exclude argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpsets
