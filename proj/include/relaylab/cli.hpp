#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relaylab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `relaylab` command. `args` excludes the program name.
/// Returns 0 on success, 1 when a verified inequality fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaylab
