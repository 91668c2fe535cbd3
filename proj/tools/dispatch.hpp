#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace notrade {

// Runs one CLI invocation. `args` excludes the program name. Reports go to
// `out`, usage and input errors to `err`. Returns the process exit status:
// 0 for a completed query or passing property check, 1 for a property
// violation, 2 for usage or input errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace notrade
