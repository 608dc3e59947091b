#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sif {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // tool error or corpus failure
inline constexpr int kExitUsage = 2;

// Runs the `sif` command line. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sif
