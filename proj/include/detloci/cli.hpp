#pragma once
// Command-line front end.  Every subcommand prints one JSON document on
// stdout.  Exit codes: 0 success, 1 failed check, 2 input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace detloci {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace detloci
