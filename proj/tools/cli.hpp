#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homlab::cli {

/// Runs one invocation; `args` excludes the program name. Returns the exit code:
/// 0 success/true/pass, 1 false/no-hom/fail, 2 usage or internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homlab::cli
