#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iterroot::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, unparsable input
inline constexpr int kExitNoSolution = 2; // obstruction, infeasible, or failed verification
inline constexpr int kExitBranches = 3;   // several roots

/// Environment variable holding the default branch cap.
inline constexpr const char* kBranchCapEnv = "ITERROOT_BRANCH_CAP";

/// Runs one command line (`args` excludes the program name). `in` backs
/// "--input -".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace iterroot::cli
