#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsplit::cli {

// Full command-line front end. args excludes the program name. Result JSON
// goes to out, diagnostics to err. Returns the process exit code:
// 0 found/verified, 1 usage or input error, 2 proven-none/exhausted/certified,
// 3 resource budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsplit::cli
