#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hf::cli {

// Runs one CLI invocation. `args` excludes the program name. Exit codes:
// 0 success, 1 domain error (error JSON on err), 2 usage or syntax error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hf::cli
