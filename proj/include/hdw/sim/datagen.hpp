#pragma once

#include <cstdint>
#include <string>

#include "hdw/core.hpp"
#include "hdw/stats/autocov.hpp"

namespace hdw::sim {

/// gaussian/gamma innovations, white noise or AR(1). rademacher_wn (+-1
/// entries, nu4 = 1) is the degenerate-fourth-moment surrogate.
enum class Scenario { gaussian_wn, gamma_wn, gaussian_ar1, gamma_ar1, rademacher_wn };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

/// Fourth moment of the scenario's innovations (3, 4.5 or 1).
double innovation_nu4(Scenario s);
bool is_ar1(Scenario s);

struct ScenarioSpec {
  Scenario scenario = Scenario::gaussian_wn;
  Index p = 1;
  Index n = 2;
  double a = 0.0;
  std::uint64_t seed = 0;
  /// Scale AR(1) innovations by sqrt(1 - a^2) so the stationary variance is 1
  /// instead of 1/(1 - a^2). The size/power tables are reproduced under this
  /// normalization.
  bool unit_variance = false;

  void validate() const;
};

/// Burn-in length of the AR(1) recursion, started from x = 0.
inline constexpr int kBurnIn = 200;

/// p x n matrix of i.i.d. innovations. Column t is drawn from stream (seed, t).
stats::TimeSeriesSample gen_white_noise(const ScenarioSpec& spec);

/// x_t = a x_{t-1} + z_t, or + sqrt(1 - a^2) z_t with unit_variance. The
/// innovations z_1..z_n are exactly the columns gen_white_noise would return; burn-in innovations come from separate
/// streams, so a = 0 reproduces white noise bit for bit.
stats::TimeSeriesSample gen_ar1(const ScenarioSpec& spec);

/// Dispatches on spec.scenario.
stats::TimeSeriesSample generate(const ScenarioSpec& spec);

}  // namespace hdw::sim
