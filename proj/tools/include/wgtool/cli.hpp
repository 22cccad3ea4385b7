#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wgtool {

enum ExitCode : int { Ok = 0, Rejected = 1, Usage = 2, Guard = 3 };

/// Runs one wgtool invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace wgtool
