#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decharge {

/// Entry point of the `decharge` executable. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decharge
