#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

#include "hdw/sim/datagen.hpp"
#include "hdw/sim/montecarlo.hpp"
#include "hdw/sim/parallel.hpp"
#include "hdw/sim/rng.hpp"

using namespace hdw;
using namespace hdw::sim;

namespace {

double lag1_autocorrelation(const Eigen::MatrixXd& X) {
  const Index n = X.cols();
  const double num = (X.leftCols(n - 1).array() * X.rightCols(n - 1).array()).sum();
  return num / X.squaredNorm();
}

double mean_square(const Eigen::MatrixXd& X) { return X.squaredNorm() / static_cast<double>(X.size()); }

MonteCarloConfig small_config(Scenario s, double a, std::vector<Method> methods) {
  MonteCarloConfig cfg;
  cfg.scenario = {s, 10, 30, a, 0, false};
  cfg.q = 2;
  cfg.reps = 60;
  cfg.methods = std::move(methods);
  cfg.B = 40;
  cfg.base_seed = 2024;
  return cfg;
}

}  // namespace

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
  Xoshiro256 a = make_stream(5, {1}), b = make_stream(5, {1}), c = make_stream(5, {2});
  for (int k = 0; k < 100; ++k) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
}

TEST(Rng, BelowIsUniform) {
  Xoshiro256 rng(99);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int k = 0; k < draws; ++k) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
  EXPECT_LT(chi2, 22.46);  // chi-square(6) 0.999 quantile
}

TEST(Rng, ShuffleIsPermutation) {
  Xoshiro256 rng(3);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> w = v;
  shuffle(w.begin(), w.end(), rng);
  EXPECT_TRUE(std::is_permutation(v.begin(), v.end(), w.begin()));
  EXPECT_NE(v, w);
}

TEST(Parallel, CoversEveryIndexOnce) {
  for (int threads : {1, 2, 5}) {
    std::vector<std::atomic<int>> hits(37);
    parallel_for(37, threads, [&](int i) { ++hits[static_cast<std::size_t>(i)]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  EXPECT_THROW(parallel_for(10, 3, [](int i) {
                 if (i == 4) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Datagen, ScenarioNames) {
  for (Scenario s : {Scenario::gaussian_wn, Scenario::gamma_wn, Scenario::gaussian_ar1, Scenario::gamma_ar1,
                     Scenario::rademacher_wn}) {
    EXPECT_EQ(parse_scenario(to_string(s)), s);
  }
  EXPECT_THROW(parse_scenario("cauchy"), ParameterError);
  EXPECT_EQ(innovation_nu4(Scenario::gamma_ar1), 4.5);
  EXPECT_EQ(innovation_nu4(Scenario::rademacher_wn), 1.0);
  EXPECT_TRUE(is_ar1(Scenario::gaussian_ar1));
  EXPECT_FALSE(is_ar1(Scenario::gamma_wn));
}

TEST(Datagen, Validation) {
  EXPECT_THROW(generate({Scenario::gaussian_wn, 3, 10, 0.2, 1}), ParameterError);
  EXPECT_THROW(generate({Scenario::gaussian_ar1, 3, 10, 1.0, 1}), ParameterError);
  EXPECT_THROW(generate({Scenario::gaussian_ar1, 3, 10, -1.5, 1}), ParameterError);
  EXPECT_THROW(generate({Scenario::gaussian_wn, 0, 10, 0.0, 1}), ParameterError);
  EXPECT_THROW(generate({Scenario::gaussian_wn, 3, 1, 0.0, 1}), ParameterError);
}

TEST(Datagen, DeterministicPerSeedAndColumn) {
  const auto a = generate({Scenario::gamma_wn, 5, 20, 0.0, 7}).data();
  const auto b = generate({Scenario::gamma_wn, 5, 20, 0.0, 7}).data();
  const auto c = generate({Scenario::gamma_wn, 5, 20, 0.0, 8}).data();
  const auto longer = generate({Scenario::gamma_wn, 5, 40, 0.0, 7}).data();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(longer.leftCols(20), a);
}

TEST(Datagen, InnovationMoments) {
  struct Case {
    Scenario s;
    double nu4;
  };
  for (const Case& k : {Case{Scenario::gaussian_wn, 3.0}, Case{Scenario::gamma_wn, 4.5}}) {
    const Eigen::MatrixXd X = generate({k.s, 200, 1000, 0.0, 11}).data();
    const double n = static_cast<double>(X.size());
    EXPECT_NEAR(X.mean(), 0.0, 0.01);
    EXPECT_NEAR(mean_square(X), 1.0, 0.01);
    EXPECT_NEAR(X.array().pow(4).sum() / n, k.nu4, 0.1);
  }
  const Eigen::MatrixXd R = generate({Scenario::rademacher_wn, 20, 500, 0.0, 2}).data();
  EXPECT_TRUE((R.array().abs() == 1.0).all());
  EXPECT_NEAR(R.mean(), 0.0, 0.02);
}

TEST(Datagen, Ar1ZeroCoefficientIsWhiteNoise) {
  EXPECT_EQ(generate({Scenario::gaussian_ar1, 4, 25, 0.0, 3}).data(),
            generate({Scenario::gaussian_wn, 4, 25, 0.0, 3}).data());
  EXPECT_EQ(generate({Scenario::gamma_ar1, 4, 25, 0.0, 3, true}).data(),
            generate({Scenario::gamma_wn, 4, 25, 0.0, 3}).data());
}

TEST(Datagen, Ar1Recursion) {
  const double a = 0.6;
  const Eigen::MatrixXd X = generate({Scenario::gaussian_ar1, 3, 50, a, 4}).data();
  const Eigen::MatrixXd Z = generate({Scenario::gaussian_wn, 3, 50, 0.0, 4}).data();
  for (Index t = 1; t < 50; ++t) EXPECT_LT((X.col(t) - a * X.col(t - 1) - Z.col(t)).cwiseAbs().maxCoeff(), 1e-14);

  const Eigen::MatrixXd U = generate({Scenario::gaussian_ar1, 3, 50, a, 4, true}).data();
  const double s = std::sqrt(1.0 - a * a);
  for (Index t = 1; t < 50; ++t) EXPECT_LT((U.col(t) - a * U.col(t - 1) - s * Z.col(t)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Datagen, Ar1StationaryMoments) {
  for (double a : {-0.5, 0.3, 0.8}) {
    const Eigen::MatrixXd X = generate({Scenario::gaussian_ar1, 100, 2000, a, 5}).data();
    EXPECT_NEAR(lag1_autocorrelation(X), a, 0.01) << a;
    EXPECT_NEAR(mean_square(X), 1.0 / (1.0 - a * a), 0.05 / (1.0 - a * a)) << a;
    const Eigen::MatrixXd U = generate({Scenario::gamma_ar1, 100, 2000, a, 5, true}).data();
    EXPECT_NEAR(lag1_autocorrelation(U), a, 0.01) << a;
    EXPECT_NEAR(mean_square(U), 1.0, 0.05) << a;
  }
}

TEST(MonteCarlo, MethodNames) {
  for (Method m : {Method::phi, Method::john_simes, Method::permutation}) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("hosking"), ParameterError);
  EXPECT_EQ(white_noise_for_nu4(4.5), Scenario::gamma_wn);
  EXPECT_THROW(white_noise_for_nu4(9.0), ParameterError);
}

TEST(MonteCarlo, ConfigValidation) {
  auto cfg = small_config(Scenario::gaussian_wn, 0.0, {Method::phi});
  cfg.q = 30;
  EXPECT_THROW(run_size_power(cfg), ParameterError);
  cfg = small_config(Scenario::gaussian_wn, 0.0, {Method::permutation});
  cfg.B = 10;
  EXPECT_THROW(run_size_power(cfg), ParameterError);
  cfg = small_config(Scenario::gaussian_wn, 0.0, {});
  EXPECT_THROW(run_size_power(cfg), ParameterError);
  cfg = small_config(Scenario::gaussian_wn, 0.0, {Method::phi});
  cfg.reps = 0;
  EXPECT_THROW(run_size_power(cfg), ParameterError);
}

TEST(MonteCarlo, ReproducibleAcrossThreadCounts) {
  const auto cfg = small_config(Scenario::gamma_ar1, 0.2, {Method::phi, Method::john_simes, Method::permutation});
  const ResultTable one = run_size_power(cfg, {1, false});
  const ResultTable three = run_size_power(cfg, {3, false});
  EXPECT_EQ(one, three);
  EXPECT_EQ(one.to_csv(), three.to_csv());
  ASSERT_EQ(one.rows().size(), 3u);
  EXPECT_EQ(one.rows()[0].method, "phi");
  EXPECT_EQ(one.rows()[1].method, "john");
  EXPECT_EQ(one.rows()[2].method, "perm");
  for (const auto& r : one.rows()) {
    EXPECT_EQ(r.seconds, 0.0);
    EXPECT_EQ(r.reps, 60);
    EXPECT_DOUBLE_EQ(r.c_n, 1.0 / 3.0);
    EXPECT_NEAR(r.se, std::sqrt(r.rejection_rate * (1.0 - r.rejection_rate) / 60.0), 1e-15);
  }
}

TEST(MonteCarlo, SingleReplicate) {
  auto cfg = small_config(Scenario::gaussian_ar1, 0.9, {Method::phi});
  cfg.reps = 1;
  const auto t = run_size_power(cfg);
  const double rate = t.rows()[0].rejection_rate;
  EXPECT_TRUE(rate == 0.0 || rate == 1.0);
  EXPECT_EQ(t.rows()[0].se, 0.0);
}

TEST(MonteCarlo, StrongAlternativeIsRejected) {
  auto cfg = small_config(Scenario::gaussian_ar1, 0.7, {Method::phi, Method::john_simes});
  cfg.scenario.p = 20;
  cfg.scenario.n = 100;
  const auto t = run_size_power(cfg);
  for (const auto& r : t.rows()) EXPECT_GT(r.rejection_rate, 0.9) << r.method;
}

TEST(ResultTable, CsvRoundTripAndDuplicates) {
  ResultTable t;
  t.add({50, 100, 0.5, 0.1, "phi", 1, 0.416, 0.0156, 1000, 0.0});
  t.add({50, 100, 0.5, 0.1, "john", 1, 1.0 / 3.0, 0.01, 1000, 1.25});
  t.add({50, 100, 0.5, 0.05, "phi", 1, 0.2, 0.01, 1000, 0.0});
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), ResultTable::kHeader);
  EXPECT_EQ(ResultTable::from_csv(csv), t);
  EXPECT_EQ(ResultTable::from_csv(csv).to_csv(), csv);
  EXPECT_THROW(t.add({50, 100, 0.5, 0.1, "phi", 1, 0.5, 0.0, 10, 0.0}), ParameterError);
  EXPECT_THROW(ResultTable::from_csv("p,n\n1,2\n"), ParameterError);
  EXPECT_THROW(ResultTable::from_csv(std::string(ResultTable::kHeader) + "\n1,2,3\n"), ParameterError);
}

TEST(Validation, SingleLagMoments) {
  const auto v = validate_single_lag_clt(50, 100, 5000, 3.0, 17, 1);
  EXPECT_NEAR(v.emp_mean, 0.5, 0.05 + 3.0 * v.se_mean);
  EXPECT_DOUBLE_EQ(v.theory_var, 2.5);
  EXPECT_NEAR(v.emp_var, v.theory_var, 4.0 * v.se_var);
  EXPECT_THROW(validate_single_lag_clt(50, 100, 10, 3.0, 1), ParameterError);
}

TEST(Validation, JointLagCovariance) {
  const auto v = validate_joint_clt(50, 100, 3, 5000, 3.0, 23, 1);
  EXPECT_EQ(v.emp_cov.rows(), 3);
  EXPECT_EQ(v.theory_cov.entries.rows(), 3);
  // The diagonal carries a finite-p excess of about 3% over the limit (2.58
  // against 2.5 at 20000 replicates), so compare on the absolute scale.
  EXPECT_LT(v.max_abs_dev, 0.25);
  EXPECT_TRUE(v.emp_cov.isApprox(v.emp_cov.transpose(), 0.0));
  EXPECT_THROW(validate_joint_clt(50, 100, 1, 5000, 3.0, 1), ParameterError);
}

TEST(Validation, PopulationDiagonal) {
  const auto h = rmt::SpectralDistribution::discrete({{0.5, 0.25}, {2.0, 0.75}});
  const Eigen::VectorXd d = population_diagonal(8, h);
  EXPECT_EQ((d.array() == 0.5).count(), 2);
  EXPECT_EQ((d.array() == 2.0).count(), 6);
  EXPECT_TRUE(population_diagonal(5, rmt::SpectralDistribution::point_mass(1.0)).isOnes(0.0));
  EXPECT_THROW(population_diagonal(5, rmt::SpectralDistribution::arcsine()), ParameterError);
}

TEST(Validation, PairLinearStatistic) {
  const auto v = validate_pair_clt(40, 80, 400, rmt::SpectralDistribution::point_mass(1.0),
                                   clt::Polynomial::monomial(1), 31, 1);
  EXPECT_NEAR(v.theory_cov_12, 1.0, 1e-6);
  EXPECT_NEAR(v.theory_mean_1, 0.0, 1e-9);
  EXPECT_NEAR(v.emp_cov_12, v.theory_cov_12, 4.0 * v.se_cov_12);
  EXPECT_THROW(validate_pair_clt(40, 80, 400, rmt::SpectralDistribution::arcsine(), clt::Polynomial::monomial(1), 1),
               ParameterError);
  EXPECT_THROW(validate_pair_clt(40, 80, 400, rmt::SpectralDistribution::point_mass(1.0),
                                 clt::Polynomial::monomial(5), 1),
               ParameterError);
}
