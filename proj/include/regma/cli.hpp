#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regma {

// Entry point of the regma tool. args excludes the program name. JSON goes
// to out (or to --out files), the human summary to err. Returns 0 on
// success, 1 on a computational failure and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regma
