#pragma once

#include <string>
#include <vector>

namespace relay_rgg {

/// Parses argv and runs the requested subcommand.
/// Exit codes: 0 success, 1 config/validation error, 2 deterministic
/// invariant violated during an experiment.
int run_cli(const std::vector<std::string>& args);

int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace relay_rgg
