#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bandgap/cli/config.hpp"

namespace bandgap::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kClaimFailure = 4,
};

// Each command writes data to `out` and diagnostics to `err`. Library
// errors propagate; run() maps them to exit codes.
int cmd_edges(const RunConfig& config, std::ostream& out);
/// `r` is in the sweep length units of the config.
int cmd_energy(const RunConfig& config, double r, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_ratio(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_crossover(const RunConfig& config, std::optional<double> omega_l, std::ostream& out);
int cmd_validate(const RunConfig& config, std::ostream& out);

/// Full command line without the program name, e.g. {"sweep", "--config", "run.cfg"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandgap::cli
