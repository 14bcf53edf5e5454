#include "hdw/sim/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "hdw/clt/functionals.hpp"
#include "hdw/io/format.hpp"
#include "hdw/sim/parallel.hpp"
#include "hdw/sim/rng.hpp"
#include "hdw/stats/autocov.hpp"
#include "hdw/wn/white_noise_tests.hpp"

namespace hdw::sim {

namespace {

constexpr std::uint64_t kPermutationTag = 0x7065726dULL;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

ScenarioSpec replicate_spec(const ScenarioSpec& base, std::uint64_t base_seed, int r) {
  ScenarioSpec s = base;
  s.seed = derive_seed(base_seed, {static_cast<std::uint64_t>(r)});
  return s;
}

// Sample mean and (n-1)-normalized covariance of the rows of `v`
// (one replicate per row), plus the standard error of each covariance entry.
struct Moments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd se;
};

Moments replicate_moments(const Eigen::MatrixXd& v) {
  const double reps = static_cast<double>(v.rows());
  Moments m;
  m.mean = v.colwise().mean().transpose();
  const Eigen::MatrixXd d = v.rowwise() - m.mean.transpose();
  m.cov = d.transpose() * d / (reps - 1.0);
  const Index k = v.cols();
  m.se.resize(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const Eigen::ArrayXd prod = d.col(i).array() * d.col(j).array();
      const double var = (prod - prod.mean()).square().sum() / (reps - 1.0);
      m.se(i, j) = std::sqrt(var / reps);
    }
  }
  return m;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::phi:
      return "phi";
    case Method::john_simes:
      return "john";
    case Method::permutation:
      return "perm";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "phi") return Method::phi;
  if (name == "john" || name == "john_simes") return Method::john_simes;
  if (name == "perm" || name == "permutation") return Method::permutation;
  throw ParameterError("unknown method '" + name + "' (expected phi, john or perm)");
}

void MonteCarloConfig::validate() const {
  scenario.validate();
  if (q < 1 || q >= scenario.n) throw ParameterError("q must satisfy 1 <= q < n");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  if (reps < 1) throw ParameterError("reps must be >= 1");
  if (methods.empty()) throw ParameterError("at least one method is required");
  for (Method m : methods) {
    if (m == Method::permutation && B < 20) throw ParameterError("permutation method needs B >= 20");
  }
  if (nu4 && !(*nu4 >= 1.0)) throw ParameterError("nu4 must be >= 1");
}

void ResultTable::add(ResultRow row) {
  for (const auto& r : rows_) {
    if (std::tie(r.p, r.n, r.a, r.method, r.q) == std::tie(row.p, row.n, row.a, row.method, row.q)) {
      std::ostringstream os;
      os << "duplicate result row (p=" << row.p << ", n=" << row.n << ", a=" << row.a
         << ", method=" << row.method << ", q=" << row.q << ")";
      throw ParameterError(os.str());
    }
  }
  rows_.push_back(std::move(row));
}

void ResultTable::append(const ResultTable& other) {
  for (const auto& r : other.rows_) add(r);
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : rows_) {
    os << r.p << ',' << r.n << ',' << io::format_double(r.c_n) << ',' << io::format_double(r.a) << ','
       << r.method << ',' << r.q << ',' << io::format_double(r.rejection_rate) << ','
       << io::format_double(r.se) << ',' << r.reps << ',' << io::format_double(r.seconds) << '\n';
  }
  return os.str();
}

ResultTable ResultTable::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("empty result table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw ParameterError("unexpected result table header: " + line);
  ResultTable t;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw ParameterError("result row needs 10 fields: " + line);
    ResultRow r;
    r.p = io::parse_int(f[0]);
    r.n = io::parse_int(f[1]);
    r.c_n = io::parse_double(f[2]);
    r.a = io::parse_double(f[3]);
    r.method = f[4];
    r.q = io::parse_int(f[5]);
    r.rejection_rate = io::parse_double(f[6]);
    r.se = io::parse_double(f[7]);
    r.reps = static_cast<int>(io::parse_int(f[8]));
    r.seconds = io::parse_double(f[9]);
    t.add(std::move(r));
  }
  return t;
}

ResultTable run_size_power(const MonteCarloConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const double nu4 = cfg.nu4.value_or(innovation_nu4(cfg.scenario.scenario));
  const std::size_t nm = cfg.methods.size();
  std::vector<unsigned char> rejected(static_cast<std::size_t>(cfg.reps) * nm, 0);

  parallel_for(cfg.reps, opt.threads, [&](int r) {
    const ScenarioSpec spec = replicate_spec(cfg.scenario, cfg.base_seed, r);
    try {
      const stats::TimeSeriesSample x = generate(spec);
      for (std::size_t k = 0; k < nm; ++k) {
        bool rej = false;
        switch (cfg.methods[k]) {
          case Method::phi:
            rej = wn::multi_lag_test(x, cfg.q, cfg.alpha, nu4).reject;
            break;
          case Method::john_simes:
            rej = wn::john_simes_test(x, cfg.q, cfg.alpha, nu4).reject;
            break;
          case Method::permutation:
            rej = wn::permutation_test(x, cfg.q, cfg.alpha, cfg.B, derive_seed(spec.seed, {kPermutationTag}))
                      .reject;
            break;
        }
        rejected[static_cast<std::size_t>(r) * nm + k] = rej ? 1 : 0;
      }
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "replicate " << r << " (seed " << spec.seed << ") failed: " << e.what();
      throw std::runtime_error(os.str());
    }
  });

  const double seconds =
      opt.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
  ResultTable table;
  for (std::size_t k = 0; k < nm; ++k) {
    long count = 0;
    for (int r = 0; r < cfg.reps; ++r) count += rejected[static_cast<std::size_t>(r) * nm + k];
    ResultRow row;
    row.p = cfg.scenario.p;
    row.n = cfg.scenario.n;
    row.c_n = static_cast<double>(cfg.scenario.p) / static_cast<double>(cfg.scenario.n);
    row.a = cfg.scenario.a;
    row.method = to_string(cfg.methods[k]);
    row.q = cfg.q;
    row.rejection_rate = static_cast<double>(count) / cfg.reps;
    row.se = std::sqrt(row.rejection_rate * (1.0 - row.rejection_rate) / cfg.reps);
    row.reps = cfg.reps;
    row.seconds = seconds;
    table.add(std::move(row));
  }
  return table;
}

Scenario white_noise_for_nu4(double nu4) {
  if (nu4 == 3.0) return Scenario::gaussian_wn;
  if (nu4 == 4.5) return Scenario::gamma_wn;
  if (nu4 == 1.0) return Scenario::rademacher_wn;
  throw ParameterError("no built-in white-noise scenario has nu4 = " + io::format_double(nu4) +
                       " (available: 1, 3, 4.5)");
}

SingleLagValidation validate_single_lag_clt(Index p, Index n, int reps, double nu4, std::uint64_t seed,
                                            int threads) {
  if (reps < 100) throw ParameterError("validate_single_lag_clt needs reps >= 100");
  ScenarioSpec base{white_noise_for_nu4(nu4), p, n, 0.0, 0, false};
  base.validate();
  Eigen::MatrixXd v(reps, 1);
  parallel_for(reps, threads, [&](int r) {
    const auto x = generate(replicate_spec(base, seed, r));
    v(r, 0) = static_cast<double>(n) / static_cast<double>(p) * stats::lag_stat(x, 1) -
              static_cast<double>(p) / 2.0;
  });
  const Moments m = replicate_moments(v);
  SingleLagValidation out;
  out.emp_mean = m.mean(0);
  out.emp_var = m.cov(0, 0);
  out.se_mean = std::sqrt(out.emp_var / reps);
  out.se_var = m.se(0, 0);
  out.theory_var = clt::s_variance(1, static_cast<double>(p) / static_cast<double>(n), nu4);
  return out;
}

JointValidation validate_joint_clt(Index p, Index n, Index q, int reps, double nu4, std::uint64_t seed,
                                   int threads) {
  if (q < 2) throw ParameterError("validate_joint_clt needs q >= 2");
  if (reps < 1000) throw ParameterError("validate_joint_clt needs reps >= 1000");
  ScenarioSpec base{white_noise_for_nu4(nu4), p, n, 0.0, 0, false};
  base.validate();
  if (q >= n) throw ParameterError("q must be < n");
  Eigen::MatrixXd v(reps, q);
  const double scale = static_cast<double>(n) / static_cast<double>(p);
  parallel_for(reps, threads, [&](int r) {
    const auto x = generate(replicate_spec(base, seed, r));
    for (Index lag = 1; lag <= q; ++lag) v(r, lag - 1) = scale * stats::lag_stat(x, lag);
  });
  const Moments m = replicate_moments(v);
  const double c_n = static_cast<double>(p) / static_cast<double>(n);
  JointValidation out{m.cov, m.se, clt::joint_lag_cov_matrix(static_cast<int>(q), c_n, nu4), 0.0, 0.0};
  const Eigen::ArrayXXd dev = (out.emp_cov - out.theory_cov.entries).array().abs();
  out.max_abs_dev = dev.maxCoeff();
  out.max_abs_z = (dev / out.se.array()).maxCoeff();
  return out;
}

Eigen::VectorXd population_diagonal(Index p, const rmt::SpectralDistribution& h) {
  if (p < 1) throw ParameterError("p must be >= 1");
  if (h.kind() == rmt::SpectralDistribution::Kind::arcsine) {
    throw ParameterError("population diagonal needs a point or discrete law");
  }
  const auto& atoms = h.atoms();
  Eigen::VectorXd d(p);
  for (Index i = 0; i < p; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(p);
    double cum = 0.0;
    std::size_t k = 0;
    for (; k + 1 < atoms.size(); ++k) {
      cum += atoms[k].weight;
      if (u <= cum) break;
    }
    d(i) = atoms[k].value;
  }
  return d;
}

PairValidation validate_pair_clt(Index p, Index n, int reps, const rmt::SpectralDistribution& h2,
                                const clt::Polynomial& f, std::uint64_t seed, int threads) {
  if (h2.kind() == rmt::SpectralDistribution::Kind::arcsine || h2.atoms().size() > 8) {
    throw ParameterError("validate_pair_clt needs H2 discrete with at most 8 atoms");
  }
  if (h2.support_min() < 0.0) throw ParameterError("validate_pair_clt needs a nonnegative H2");
  if (f.degree() > 4) throw ParameterError("validate_pair_clt needs deg f <= 4");
  if (reps < 2) throw ParameterError("validate_pair_clt needs reps >= 2");
  ScenarioSpec base{Scenario::gaussian_wn, p, n, 0.0, 0, false};
  base.validate();

  const double c_n = static_cast<double>(p) / static_cast<double>(n);
  const Eigen::VectorXd t2 = population_diagonal(p, h2);
  // Finite-p law actually realized by t2.
  std::vector<rmt::Atom> atoms2;
  for (const auto& at : h2.atoms()) {
    const auto count = (t2.array() == at.value).count();
    if (count > 0) atoms2.push_back({at.value, static_cast<double>(count) / static_cast<double>(p)});
  }
  const rmt::SpectralDistribution h1 = rmt::SpectralDistribution::point_mass(1.0);
  const rmt::SpectralDistribution h2n = atoms2.size() == 1 ? rmt::SpectralDistribution::point_mass(atoms2[0].value)
                                                           : rmt::SpectralDistribution::discrete(atoms2);

  // Centering p int f dF^{c_n, H}, term by term so a constant f cancels exactly.
  const Eigen::VectorXd& coef = f.coeffs();
  auto centering = [&](const rmt::SpectralDistribution& h) {
    double acc = coef(0) * static_cast<double>(p);
    for (Index k = 1; k < coef.size(); ++k) {
      if (coef(k) != 0.0) {
        const auto mono = clt::Polynomial::monomial(static_cast<int>(k));
        acc += coef(k) * static_cast<double>(p) * clt::lsd_moment(mono, c_n, h);
      }
    }
    return acc;
  };
  const double center1 = centering(h1);
  const double center2 = centering(h2n);
  auto trace_f = [&](const Eigen::VectorXd& eig) {
    double acc = coef(0) * static_cast<double>(eig.size());
    for (Index k = 1; k < coef.size(); ++k) {
      if (coef(k) != 0.0) acc += coef(k) * eig.array().pow(static_cast<double>(k)).sum();
    }
    return acc;
  };

  const Eigen::VectorXd qdiag = t2.array().sqrt();
  Eigen::MatrixXd v(reps, 2);
  parallel_for(reps, threads, [&](int r) {
    const Eigen::MatrixXd x = generate(replicate_spec(base, seed, r)).data();
    const Eigen::MatrixXd b1 = x * x.transpose() / static_cast<double>(n);
    const Eigen::MatrixXd b2 = qdiag.asDiagonal() * b1 * qdiag.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(b1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(b2, Eigen::EigenvaluesOnly);
    v(r, 0) = trace_f(e1.eigenvalues()) - center1;
    v(r, 1) = trace_f(e2.eigenvalues()) - center2;
  });
  const Moments m = replicate_moments(v);

  PairValidation out;
  out.emp_cov_12 = m.cov(0, 1);
  out.se_cov_12 = m.se(0, 1);
  out.emp_mean_1 = m.mean(0);
  out.emp_mean_2 = m.mean(1);
  const clt::MomentProfile mp = clt::MomentProfile::real(3.0);
  out.theory_cov_12 = clt::clt_cov(f, f, c_n, rmt::JointSpectralDistribution::with_point(1.0, h2), mp);
  out.theory_mean_1 = clt::clt_mean(f, c_n, h1, mp);
  out.theory_mean_2 = clt::clt_mean(f, c_n, h2, mp);
  return out;
}

}  // namespace hdw::sim
