#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lps {

/// Exit codes: 0 pass, 1 usage or input error, 2 mathematical violation found.
enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitViolation = 2 };

/// Entry point of the `loewner-ps` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lps
