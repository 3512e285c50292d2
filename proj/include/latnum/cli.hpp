#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latnum {

/**
 * Runs the command line tool. `args` excludes the program name. Returns 0 when
 * every requested check holds, 2 when a check fails and 1 on usage or I/O errors.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latnum
