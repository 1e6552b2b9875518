#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nk::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,   // verification ran and the answer is "no"
  kMalformed = 2,  // unreadable input or bad usage
  kDomain = 3,     // valid input rejected by an operation's precondition
};

// Runs the `nk` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace nk::cli
