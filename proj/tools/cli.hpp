#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rcv::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kInput = 3,
  kInternal = 4,
};

/// Runs one rcvtool command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcv::cli
