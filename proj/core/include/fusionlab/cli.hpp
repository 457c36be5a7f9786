#pragma once

// The fusionlab command line, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitExhausted = 2;
inline constexpr int kExitVerify = 3;

/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fusionlab
