#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace issr::cli {

enum ExitCode : int {
  kExitOk = 0,
  // More than 10% of items failed.
  kExitPartial = 1,
  kExitUsage = 2,
  kExitTransport = 3,
};

// Full command line including the program name, e.g.
// {"issr", "generate", "--dataset", "items.jsonl", ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace issr::cli
