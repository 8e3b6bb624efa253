#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scalekit {

// Parses and runs one CLI invocation. `args` is argv without the program
// name. Normal output goes to `out` unless the invocation redirects it with
// --output; diagnostics go to `err`.
//
// Exit codes: 0 success, 2 usage error (unknown flag, missing required flag),
// 3 domain error (invalid parameter or flag value, unreadable input),
// 4 accuracy or verification failure.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

} // namespace scalekit
