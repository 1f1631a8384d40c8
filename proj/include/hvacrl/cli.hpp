#pragma once

#include <string>
#include <vector>

namespace hvacrl::cli {

/// Entry point shared by the binary and the tests. Returns the exit status.
int run(const std::vector<std::string>& args);

} // namespace hvacrl::cli
