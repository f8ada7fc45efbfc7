/// @file cli.hpp
/// @brief Command-line front end.
///
/// Exit codes: 0 success, 2 usage or configuration errors, 3 solver
/// failures, 1 anything unexpected.
#pragma once

#include <string>
#include <vector>

namespace kgz {

int cli_run(int argc, const char* const* argv);

/// Convenience for tests: args without the program name.
int cli_run(const std::vector<std::string>& args);

}  // namespace kgz
