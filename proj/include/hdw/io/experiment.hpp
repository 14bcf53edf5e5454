#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hdw/sim/montecarlo.hpp"

namespace hdw::io {

/// Experiment file, TOML:
///
///   schema = 1
///   [defaults]            # optional; any per-experiment key
///   reps = 500
///   [[experiment]]        # one or more
///   scenario = "gaussian_wn"
///   p = 50
///   n = 100
///
/// Keys: scenario, p, n, a, q, alpha, reps, methods (array of
/// "phi" | "john" | "perm"), B, seed, nu4, unit_variance. Unknown keys are
/// rejected.
inline constexpr int kExperimentSchema = 1;

std::vector<sim::MonteCarloConfig> parse_experiment(std::istream& in);
std::vector<sim::MonteCarloConfig> load_experiment(const std::string& path);

/// Runs every config in order and concatenates the tables.
sim::ResultTable run_experiment(const std::vector<sim::MonteCarloConfig>& configs,
                                const sim::RunOptions& opt = {});

}  // namespace hdw::io
