#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hartmankit::cli {

/// Exit codes: 0 success, 2 usage/config/dataset, 3 physics-domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPhysics = 3;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hartmankit::cli
