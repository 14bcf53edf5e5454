#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdw/clt/closed_form.hpp"
#include "hdw/clt/polynomial.hpp"
#include "hdw/rmt/spectral_distribution.hpp"
#include "hdw/sim/datagen.hpp"

namespace hdw::sim {

enum class Method { phi, john_simes, permutation };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct MonteCarloConfig {
  /// Template for every replicate; its seed is replaced by derive(base_seed, r).
  ScenarioSpec scenario;
  Index q = 1;
  double alpha = 0.05;
  int reps = 500;
  std::vector<Method> methods{Method::phi};
  int B = 200;
  std::uint64_t base_seed = 0;
  /// Fourth moment handed to the tests; defaults to the scenario's known value.
  std::optional<double> nu4;

  void validate() const;
};

struct RunOptions {
  int threads = 1;
  /// Record wall time in the seconds column. Off by default so reruns are
  /// byte-identical.
  bool timing = false;
};

struct ResultRow {
  Index p = 0;
  Index n = 0;
  double c_n = 0.0;
  double a = 0.0;
  std::string method;
  Index q = 0;
  double rejection_rate = 0.0;
  double se = 0.0;
  int reps = 0;
  double seconds = 0.0;

  bool operator==(const ResultRow&) const = default;
};

class ResultTable {
 public:
  static constexpr const char* kHeader = "p,n,c_n,a,method,q,rejection_rate,se,reps,seconds";

  /// Throws ParameterError when (p, n, a, method, q) is already present.
  void add(ResultRow row);
  void append(const ResultTable& other);
  const std::vector<ResultRow>& rows() const noexcept { return rows_; }

  std::string to_csv() const;
  static ResultTable from_csv(const std::string& text);

  bool operator==(const ResultTable&) const = default;

 private:
  std::vector<ResultRow> rows_;
};

/// Replicate r draws its data from seed derive(base_seed, r) and applies every
/// requested method to the same sample. Rates are reduced in replicate order.
ResultTable run_size_power(const MonteCarloConfig& cfg, const RunOptions& opt = {});

/// Scenario with innovations of the given fourth moment (3, 4.5 or 1).
Scenario white_noise_for_nu4(double nu4);

struct SingleLagValidation {
  double emp_mean = 0.0;
  double emp_var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
  double theory_mean = 0.5;
  double theory_var = 0.0;
};

/// Moments of (n/p) L_1 - p/2 under white noise against N(1/2, 1 + 1.5 c (nu4 - 1)).
SingleLagValidation validate_single_lag_clt(Index p, Index n, int reps, double nu4, std::uint64_t seed,
                                            int threads = 1);

struct JointValidation {
  Eigen::MatrixXd emp_cov;
  Eigen::MatrixXd se;  ///< Monte Carlo standard error of each emp_cov entry
  clt::JointCovMatrix theory_cov;
  double max_abs_dev = 0.0;
  double max_abs_z = 0.0;  ///< max |emp - theory| / se
};

/// Covariance of ((n/p) L_tau)_{tau=1..q} under white noise against
/// joint_lag_cov_matrix(q, p/n, nu4).
JointValidation validate_joint_clt(Index p, Index n, Index q, int reps, double nu4, std::uint64_t seed,
                                   int threads = 1);

struct PairValidation {
  double emp_cov_12 = 0.0;
  double se_cov_12 = 0.0;
  double theory_cov_12 = 0.0;
  double emp_mean_1 = 0.0;
  double emp_mean_2 = 0.0;
  double theory_mean_1 = 0.0;
  double theory_mean_2 = 0.0;
};

/// Centered statistics tr f(B_k) - p int f dF^{c_n, H_k} for B_1 = X X^T / n and
/// B_2 = Q X X^T Q / n, where Q^2 is diagonal with spectrum close to H2
/// (atoms assigned by cumulative rounding). Gaussian X.
PairValidation validate_pair_clt(Index p, Index n, int reps, const rmt::SpectralDistribution& h2,
                                const clt::Polynomial& f, std::uint64_t seed, int threads = 1);

/// Diagonal of Q^2 used by validate_pair_clt.
Eigen::VectorXd population_diagonal(Index p, const rmt::SpectralDistribution& h);

}  // namespace hdw::sim
