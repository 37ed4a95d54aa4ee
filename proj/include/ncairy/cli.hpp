#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncairy {

// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

// Subcommands: det, hm-solve, f1, f2, scan, verify. Tables go to `out` (or
// --out), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_command(int argc, char** argv);

} // namespace ncairy
