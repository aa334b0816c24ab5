#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pencils {

// Runs the command-line tool on `args` (program name excluded) and returns
// the process exit code: 0 success, 1 domain error (e.g. not a regular
// pencil, failed checks), 2 parse / I-O / usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pencils
