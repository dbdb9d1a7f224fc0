#pragma once

#include "dopt/runner.hpp"

#include <string>
#include <vector>

namespace dopt {

struct CliRequest {
  bool list_only = false;
  ExperimentConfig config{};
};

/// Parse argv into a request. Throws std::invalid_argument on configuration
/// errors (unknown names, invalid values); CLI11 parse errors are reported
/// through the returned exit code by cli_main.
CliRequest parse_cli(const std::vector<std::string>& args);

/// Exit codes: 0 success, 2 configuration error, 1 runtime error.
int cli_main(int argc, const char* const* argv);

}  // namespace dopt
