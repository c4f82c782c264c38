#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flam::cli {

enum Exit : int {
  kOk = 0,
  kTypeError = 1,
  kParseError = 2,
  kGuard = 3,
  kUsage = 4,
};

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flam::cli
