#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinball::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitReproduce = 2;
inline constexpr int kExitUsage = 64;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinball::cli
