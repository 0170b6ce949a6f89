#pragma once

#include <string>
#include <vector>

#include "cli/report.hpp"

namespace levylab::cli {

// Dispatches a named experiment ("check operator-identity", "kernel jnu",
// "simulate couple", ...) on a resolved configuration.  Unknown subcommands
// raise ConfigError.
ExperimentReport run_experiment(const std::vector<std::string>& words, const Config& config);

std::string usage_text();

}  // namespace levylab::cli
