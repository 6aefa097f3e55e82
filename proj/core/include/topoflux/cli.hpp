#pragma once

#include <string>
#include <vector>

namespace topoflux {

/// Command line entry point shared by the binary and the tests.
/// Subcommands: persist, optimize, embed, pseudotime, bench.
/// Returns 0 on success, 2 on usage errors, 1 on any module error.
int run_cli(const std::vector<std::string>& args);

}  // namespace topoflux
