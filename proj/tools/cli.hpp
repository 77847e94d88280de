#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gapforge {

// Runs one command; args excludes the program name. Reports go to out, diagnostics to err.
// Returns 0 on pass, 1 on verification failure, 2 on input or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapforge
