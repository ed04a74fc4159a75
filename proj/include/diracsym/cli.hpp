#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diracsym::cli {

/// Dispatches one command invocation. args excludes the program name.
/// Exit codes: 0 success, 1 usage or config error, 2 numerical failure.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace diracsym::cli
