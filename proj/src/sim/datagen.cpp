#include "hdw/sim/datagen.hpp"

#include <cmath>
#include <random>

#include "hdw/sim/rng.hpp"

namespace hdw::sim {

namespace {

// Burn-in columns use stream ids (seed, kBurnInTag, j), disjoint from the
// observation streams (seed, t).
constexpr std::uint64_t kBurnInTag = 0xb0b0b0b0b0b0b0b0ULL;

enum class Law { gaussian, gamma, rademacher };

Law law_of(Scenario s) {
  switch (s) {
    case Scenario::gaussian_wn:
    case Scenario::gaussian_ar1:
      return Law::gaussian;
    case Scenario::gamma_wn:
    case Scenario::gamma_ar1:
      return Law::gamma;
    case Scenario::rademacher_wn:
      return Law::rademacher;
  }
  return Law::gaussian;
}

template <typename Vec>
void fill_innovations(Law law, Xoshiro256 rng, Vec&& col) {
  switch (law) {
    case Law::gaussian: {
      std::normal_distribution<double> dist(0.0, 1.0);
      for (Index i = 0; i < col.size(); ++i) col(i) = dist(rng);
      break;
    }
    case Law::gamma: {
      // Gamma(shape 4, scale 0.5): mean 2, variance 1.
      std::gamma_distribution<double> dist(4.0, 0.5);
      for (Index i = 0; i < col.size(); ++i) col(i) = dist(rng) - 2.0;
      break;
    }
    case Law::rademacher:
      for (Index i = 0; i < col.size(); ++i) col(i) = (rng() >> 63) != 0 ? 1.0 : -1.0;
      break;
  }
}

Eigen::MatrixXd innovations(const ScenarioSpec& spec) {
  const Law law = law_of(spec.scenario);
  Eigen::MatrixXd z(spec.p, spec.n);
  for (Index t = 0; t < spec.n; ++t) {
    fill_innovations(law, make_stream(spec.seed, {static_cast<std::uint64_t>(t)}), z.col(t));
  }
  return z;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::gaussian_wn:
      return "gaussian_wn";
    case Scenario::gamma_wn:
      return "gamma_wn";
    case Scenario::gaussian_ar1:
      return "gaussian_ar1";
    case Scenario::gamma_ar1:
      return "gamma_ar1";
    case Scenario::rademacher_wn:
      return "rademacher_wn";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::gaussian_wn, Scenario::gamma_wn, Scenario::gaussian_ar1, Scenario::gamma_ar1,
                     Scenario::rademacher_wn}) {
    if (to_string(s) == name) return s;
  }
  throw ParameterError("unknown scenario '" + name + "'");
}

double innovation_nu4(Scenario s) {
  switch (law_of(s)) {
    case Law::gaussian:
      return 3.0;
    case Law::gamma:
      return 4.5;
    case Law::rademacher:
      return 1.0;
  }
  return 3.0;
}

bool is_ar1(Scenario s) { return s == Scenario::gaussian_ar1 || s == Scenario::gamma_ar1; }

void ScenarioSpec::validate() const {
  if (p < 1) throw ParameterError("scenario needs p >= 1");
  if (n < 2) throw ParameterError("scenario needs n >= 2");
  if (!(std::abs(a) < 1.0)) throw ParameterError("AR coefficient must satisfy |a| < 1");
  if (!is_ar1(scenario) && a != 0.0) throw ParameterError("white-noise scenarios need a = 0");
}

stats::TimeSeriesSample gen_white_noise(const ScenarioSpec& spec) {
  spec.validate();
  if (is_ar1(spec.scenario)) throw ParameterError("gen_white_noise called with an AR(1) scenario");
  return stats::TimeSeriesSample(innovations(spec));
}

stats::TimeSeriesSample gen_ar1(const ScenarioSpec& spec) {
  if (!(std::abs(spec.a) < 1.0)) throw ParameterError("AR coefficient must satisfy |a| < 1");
  ScenarioSpec wn = spec;
  wn.a = 0.0;
  wn.validate();
  const Law law = law_of(spec.scenario);
  Eigen::MatrixXd x = innovations(wn);
  if (spec.a == 0.0) return stats::TimeSeriesSample(std::move(x));

  const double scale = spec.unit_variance ? std::sqrt(1.0 - spec.a * spec.a) : 1.0;
  if (spec.unit_variance) x *= scale;
  Eigen::VectorXd state = Eigen::VectorXd::Zero(spec.p);
  Eigen::VectorXd z(spec.p);
  for (int j = 0; j < kBurnIn; ++j) {
    fill_innovations(law, make_stream(spec.seed, {kBurnInTag, static_cast<std::uint64_t>(j)}), z);
    state = spec.a * state + scale * z;
  }
  for (Index t = 0; t < spec.n; ++t) {
    x.col(t) += spec.a * state;
    state = x.col(t);
  }
  return stats::TimeSeriesSample(std::move(x));
}

stats::TimeSeriesSample generate(const ScenarioSpec& spec) {
  return is_ar1(spec.scenario) ? gen_ar1(spec) : gen_white_noise(spec);
}

}  // namespace hdw::sim
