#pragma once

// Command-line driver. Exit codes: 0 success, 1 a check or precondition
// failed, 2 usage, I/O or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace homext {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace homext
