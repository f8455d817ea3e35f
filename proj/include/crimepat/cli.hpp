#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crimepat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point behind the `crimepat` executable. argv[0] is the program name.
// Data goes to files or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace crimepat::cli
