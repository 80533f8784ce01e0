#pragma once

#include "octowind/config.hpp"

#include <iosfwd>

namespace octowind {

/// Runs the configured command. Data goes to cfg.output (standard output if
/// empty); one summary line per lambda goes to `log`. Returns the process
/// exit status: 0 on success, 1 on a failed verification, 2 on a domain or
/// simulation error (diagnostic written to `log`).
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Same, writing data to `data` instead of opening cfg.output.
int run_experiment(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log);

}  // namespace octowind
