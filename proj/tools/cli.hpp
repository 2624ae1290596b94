#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dice::cli {

/// Exit code for malformed invocations, configs, words and paths.
inline constexpr int kUsageError = 64;

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dice::cli
