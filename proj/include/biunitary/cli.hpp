// Command-line front end. Exit codes: 0 positive verdict, 1 negative or
// inconclusive verdict, 2 usage or input error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biunitary {

inline constexpr int kExitPositive = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biunitary
