#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace retal::cli {

/// Full command-line entry point. Writes data to `out` (or the path given
/// via --out), diagnostics to `err`. Returns 0 on success, 2 on usage or
/// validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace retal::cli
