#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace germscan::cli {

enum ExitCode : int {
  kExitIn = 0,
  kExitOut = 1,
  kExitUndecided = 2,
  kExitMalformed = 64,
  kExitNotOnVariety = 65,
  kExitStructural = 66,
  kExitInternal = 70,
};

/// Runs the germscan command line. args[0] is the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace germscan::cli
