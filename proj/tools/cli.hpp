#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbonacci::cli {

/// Run one CLI invocation. args excludes the program name.
/// Returns 0 on success, 2 on usage errors, 1 on computation errors;
/// errors go to err with an "error:" prefix.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mbonacci::cli
