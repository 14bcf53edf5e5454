#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hdw/clt/closed_form.hpp"
#include "hdw/clt/functionals.hpp"
#include "hdw/io/csv.hpp"
#include "hdw/io/experiment.hpp"
#include "hdw/io/format.hpp"
#include "hdw/io/reports.hpp"
#include "hdw/rmt/shift.hpp"
#include "hdw/rmt/stieltjes.hpp"
#include "hdw/sim/datagen.hpp"
#include "hdw/wn/white_noise_tests.hpp"

namespace hdw::cli {

namespace {

using io::format_double;

char parse_delimiter(const std::string& d) {
  if (d == "\\t" || d == "tab") return '\t';
  if (d.size() != 1) throw ParameterError("delimiter must be a single character");
  return d[0];
}

std::optional<double> parse_nu4(const std::string& s) {
  if (s == "auto") return std::nullopt;
  return io::parse_double(s);
}

clt::Polynomial parse_polynomial(const std::string& s) {
  std::vector<double> c;
  std::string_view rest(s);
  while (true) {
    const auto pos = rest.find(',');
    c.push_back(io::parse_double(rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  return clt::Polynomial(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Index>(c.size())));
}

// chebyshev R S | diagonal <H> | with_point V <H> | atoms t1 t2 w ...
rmt::JointSpectralDistribution parse_joint(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  is >> head;
  std::string rest;
  std::getline(is, rest);
  std::istringstream rs(rest);
  if (head == "chebyshev") {
    long r = 0, s = 0;
    if (!(rs >> r >> s) || r < 1 || s < 1) throw ParameterError("'chebyshev' needs two positive lags");
    return rmt::JointSpectralDistribution::chebyshev_pair(static_cast<unsigned>(r), static_cast<unsigned>(s));
  }
  if (head == "diagonal") return rmt::JointSpectralDistribution::diagonal(rmt::SpectralDistribution::parse(rest));
  if (head == "with_point") {
    std::string v;
    rs >> v;
    std::string h;
    std::getline(rs, h);
    return rmt::JointSpectralDistribution::with_point(io::parse_double(v), rmt::SpectralDistribution::parse(h));
  }
  if (head == "atoms") {
    std::vector<double> v;
    std::string tok;
    while (rs >> tok) v.push_back(io::parse_double(tok));
    if (v.empty() || v.size() % 3 != 0) throw ParameterError("'atoms' needs triples t1 t2 weight");
    std::vector<rmt::JointAtom> atoms;
    for (std::size_t i = 0; i < v.size(); i += 3) atoms.push_back({v[i], v[i + 1], v[i + 2]});
    return rmt::JointSpectralDistribution(std::move(atoms));
  }
  throw ParameterError("unknown joint law '" + head + "' (expected chebyshev, diagonal, with_point or atoms)");
}

struct TestOpts {
  std::string file;
  Index q = 1;
  double alpha = 0.05;
  std::string nu4 = "auto";
  std::string method = "phi";
  int B = 200;
  std::uint64_t seed = 0;
  std::string layout = "rows_are_time";
  std::string delimiter = ",";
  bool header = false;
  bool center = false;
};

int cmd_test(const TestOpts& o, std::ostream& out) {
  io::DataFileSpec spec{o.file, io::parse_layout(o.layout), parse_delimiter(o.delimiter), o.header};
  stats::TimeSeriesSample x = io::read_sample(spec);
  if (o.center) x = x.centered();
  if (x.n() <= o.q) throw ParameterError("sample size n must exceed q");
  bool reject = false;
  if (o.method == "phi") {
    const auto r = wn::multi_lag_test(x, o.q, o.alpha, parse_nu4(o.nu4));
    out << io::to_key_value(r) << '\n' << io::kTestReportHeader << '\n' << io::to_csv_row(r) << '\n';
    reject = r.reject;
  } else if (o.method == "john") {
    const auto r = wn::john_simes_test(x, o.q, o.alpha, parse_nu4(o.nu4));
    out << io::to_key_value(r) << '\n' << io::kSimesReportHeader << '\n' << io::to_csv_row(r) << '\n';
    reject = r.reject;
  } else if (o.method == "perm") {
    const auto r = wn::permutation_test(x, o.q, o.alpha, o.B, o.seed);
    out << io::to_key_value(r) << '\n' << io::kTestReportHeader << '\n' << io::to_csv_row(r) << '\n';
    reject = r.reject;
  } else {
    throw ParameterError("unknown method '" + o.method + "' (expected phi, john or perm)");
  }
  return reject ? kReject : kAccept;
}

struct SimOpts {
  std::string file;
  std::string out;
  int threads = 1;
  bool timing = false;
};

int cmd_simulate(const SimOpts& o, std::ostream& out) {
  const auto configs = io::load_experiment(o.file);
  const sim::ResultTable table = io::run_experiment(configs, {o.threads, o.timing});
  if (o.out.empty()) {
    out << table.to_csv();
  } else {
    std::ofstream f(o.out);
    if (!f) throw ParameterError("cannot write '" + o.out + "'");
    f << table.to_csv();
  }
  return 0;
}

struct RmtOpts {
  double c = 1.0;
  std::string h = "point 1";
  bool companion_side = false;
  double x_min = 0.0;
  double x_max = 4.5;
  int points = 200;
  double z_re = 0.0;
  double z_im = 1.0;
  Index n = 4;
  Index tau = 1;
  double tol = 1e-10;
  int max_iter = 10000;
};

rmt::SolverConfig solver_config(const RmtOpts& o) {
  rmt::SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.validate();
  return cfg;
}

int cmd_density(const RmtOpts& o, std::ostream& out) {
  if (o.points < 2 || !(o.x_max > o.x_min)) throw ParameterError("density grid needs x-max > x-min and points >= 2");
  const auto h = rmt::SpectralDistribution::parse(o.h);
  const double c = o.companion_side ? 1.0 / o.c : o.c;
  const auto cfg = solver_config(o);
  out << "x,density\n";
  for (int i = 0; i < o.points; ++i) {
    const double x = o.x_min + (o.x_max - o.x_min) * i / (o.points - 1);
    out << format_double(x) << ',' << format_double(rmt::lsd_density(x, c, h, cfg)) << '\n';
  }
  return 0;
}

int cmd_solve(const RmtOpts& o, std::ostream& out) {
  const auto h = rmt::SpectralDistribution::parse(o.h);
  const double c = o.companion_side ? 1.0 / o.c : o.c;
  const auto pt = rmt::companion_transform({o.z_re, o.z_im}, c, h, solver_config(o));
  out << "z_re=" << format_double(pt.z.real()) << '\n'
      << "z_im=" << format_double(pt.z.imag()) << '\n'
      << "m_re=" << format_double(pt.m.real()) << '\n'
      << "m_im=" << format_double(pt.m.imag()) << '\n'
      << "m_bar_re=" << format_double(pt.m_bar.real()) << '\n'
      << "m_bar_im=" << format_double(pt.m_bar.imag()) << '\n'
      << "residual=" << format_double(pt.residual) << '\n'
      << "iterations=" << pt.iterations << '\n';
  return 0;
}

int cmd_spectrum(const RmtOpts& o, std::ostream& out) {
  const auto v = rmt::symmetrized_shift_spectrum(o.n, o.tau);
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_double(v[i]);
  out << '\n';
  return 0;
}

struct CltOpts {
  std::string f = "0,0,1";
  std::string f2;
  double c = 1.0;
  std::string h = "point 1";
  std::string joint = "diagonal point 1";
  double nu4 = 3.0;
  std::optional<double> alpha_x;
  std::optional<double> beta_x;
  bool companion_side = false;
  int nodes = 800;
  int r = 1;
  int s = 1;
  int q = 1;
  double beta = 0.0;
};

clt::MomentProfile moment_profile(const CltOpts& o) {
  if (o.alpha_x.has_value() != o.beta_x.has_value()) {
    throw ParameterError("--alpha-x and --beta-x must be given together");
  }
  if (o.alpha_x) return clt::MomentProfile::general(*o.alpha_x, *o.beta_x);
  return clt::MomentProfile::real(o.nu4);
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

struct GenOpts {
  std::string scenario = "gaussian_wn";
  Index p = 10;
  Index n = 100;
  double a = 0.0;
  std::uint64_t seed = 0;
  bool unit_variance = false;
  std::string out;
  std::string layout = "rows_are_time";
  std::string delimiter = ",";
};

int cmd_generate(const GenOpts& o, std::ostream& out) {
  sim::ScenarioSpec spec{sim::parse_scenario(o.scenario), o.p, o.n, o.a, o.seed, o.unit_variance};
  const auto x = sim::generate(spec);
  const auto layout = io::parse_layout(o.layout);
  const char delim = parse_delimiter(o.delimiter);
  if (o.out.empty()) {
    io::write_sample(out, x.data(), layout, delim);
  } else {
    std::ofstream f(o.out);
    if (!f) throw ParameterError("cannot write '" + o.out + "'");
    io::write_sample(f, x.data(), layout, delim);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-dimensional white-noise tests and random-matrix tools"};
  app.require_subcommand(1);

  TestOpts t;
  auto* test = app.add_subcommand("test", "Test a data file for white noise (exit 0 accept, 1 reject, 2 error)");
  test->add_option("file", t.file, "Data file")->required();
  test->add_option("--q", t.q, "Number of lags")->capture_default_str();
  test->add_option("--alpha", t.alpha, "Significance level")->capture_default_str();
  test->add_option("--nu4", t.nu4, "Fourth moment, or 'auto' to estimate it")->capture_default_str();
  test->add_option("--method", t.method, "phi | john | perm")->capture_default_str();
  test->add_option("--B", t.B, "Permutations (perm)")->capture_default_str();
  test->add_option("--seed", t.seed, "Permutation seed")->capture_default_str();
  test->add_option("--layout", t.layout, "rows_are_time | rows_are_coords")->capture_default_str();
  test->add_option("--delimiter", t.delimiter, "Field delimiter")->capture_default_str();
  test->add_flag("--header", t.header, "Skip the first non-blank line");
  test->add_flag("--center", t.center, "Subtract each coordinate's sample mean first");

  SimOpts so;
  auto* simulate = app.add_subcommand("simulate", "Run a TOML experiment file and print the result table");
  simulate->add_option("experiment", so.file, "Experiment file")->required();
  simulate->add_option("--out", so.out, "Write the CSV here instead of stdout");
  simulate->add_option("--threads", so.threads, "Worker threads")->capture_default_str();
  simulate->add_flag("--timing", so.timing, "Fill the seconds column with wall time");

  RmtOpts ro;
  auto* rmt = app.add_subcommand("rmt", "Stieltjes solver, LSD density and shift spectra");
  rmt->require_subcommand(1);
  auto add_law = [&ro](CLI::App* sub) {
    sub->add_option("--c", ro.c, "Dimension ratio p/n")->capture_default_str();
    sub->add_option("--H", ro.h, "Population law: 'point v', 'discrete v w ...', 'arcsine'")->capture_default_str();
    sub->add_flag("--companion-side", ro.companion_side, "Solve at ratio 1/c");
    sub->add_option("--tol", ro.tol, "Solver tolerance")->capture_default_str();
    sub->add_option("--max-iter", ro.max_iter, "Solver iteration budget")->capture_default_str();
  };
  auto* density = rmt->add_subcommand("density", "LSD density on a grid (CSV)");
  add_law(density);
  density->add_option("--x-min", ro.x_min)->capture_default_str();
  density->add_option("--x-max", ro.x_max)->capture_default_str();
  density->add_option("--points", ro.points)->capture_default_str();
  auto* solve = rmt->add_subcommand("solve", "m and m_bar at one z");
  add_law(solve);
  solve->add_option("--z-re", ro.z_re)->capture_default_str();
  solve->add_option("--z-im", ro.z_im)->capture_default_str();
  auto* spectrum = rmt->add_subcommand("spectrum", "Sorted spectrum of (D_tau + D_tau^T)/2");
  spectrum->add_option("--n", ro.n)->capture_default_str();
  spectrum->add_option("--tau", ro.tau)->capture_default_str();

  CltOpts co;
  auto* clt = app.add_subcommand("clt", "CLT mean/covariance and the lag-statistic closed forms");
  clt->require_subcommand(1);
  auto add_moments = [&co](CLI::App* sub) {
    sub->add_option("--nu4", co.nu4, "Fourth moment of real entries")->capture_default_str();
    sub->add_option("--alpha-x", co.alpha_x, "alpha_x (with --beta-x, overrides --nu4)");
    sub->add_option("--beta-x", co.beta_x, "beta_x (with --alpha-x)");
    sub->add_option("--nodes", co.nodes, "Contour nodes")->capture_default_str();
  };
  auto* mean = clt->add_subcommand("mean", "Limiting mean E X_f");
  mean->add_option("--f", co.f, "Polynomial coefficients, constant first")->capture_default_str();
  mean->add_option("--c", co.c)->capture_default_str();
  mean->add_option("--H", co.h)->capture_default_str();
  add_moments(mean);
  auto* cov = clt->add_subcommand("cov", "Limiting covariance Cov(X_f1, X_f2)");
  cov->add_option("--f", co.f, "First polynomial")->capture_default_str();
  cov->add_option("--f2", co.f2, "Second polynomial (default: same as --f)");
  cov->add_option("--c", co.c)->capture_default_str();
  cov->add_option("--joint", co.joint,
                  "Joint law: 'chebyshev R S', 'diagonal <H>', 'with_point V <H>', 'atoms t1 t2 w ...'")
      ->capture_default_str();
  cov->add_flag("--companion-side", co.companion_side, "Exchange the roles of p and n (ratio 1/c)");
  add_moments(cov);
  auto* closed = clt->add_subcommand("closed", "Closed-form covariance of the lag-r and lag-s statistics");
  closed->add_option("--r", co.r)->capture_default_str();
  closed->add_option("--s", co.s)->capture_default_str();
  closed->add_option("--c", co.c)->capture_default_str();
  closed->add_option("--beta-x", co.beta, "beta_x")->capture_default_str();
  auto* joint = clt->add_subcommand("joint", "Joint covariance matrix of the normalized lag statistics");
  joint->add_option("--q", co.q)->capture_default_str();
  joint->add_option("--c", co.c)->capture_default_str();
  joint->add_option("--nu4", co.nu4)->capture_default_str();
  auto* svar = clt->add_subcommand("svar", "Variance s(c) of the multi-lag statistic");
  svar->add_option("--q", co.q)->capture_default_str();
  svar->add_option("--c", co.c)->capture_default_str();
  svar->add_option("--nu4", co.nu4)->capture_default_str();

  GenOpts go;
  auto* gen = app.add_subcommand("generate", "Write a simulated sample");
  gen->add_option("--scenario", go.scenario,
                  "gaussian_wn | gamma_wn | gaussian_ar1 | gamma_ar1 | rademacher_wn")
      ->capture_default_str();
  gen->add_option("--p", go.p)->capture_default_str();
  gen->add_option("--n", go.n)->capture_default_str();
  gen->add_option("--a", go.a, "AR(1) coefficient")->capture_default_str();
  gen->add_option("--seed", go.seed)->capture_default_str();
  gen->add_flag("--unit-variance", go.unit_variance, "Scale AR(1) innovations to unit stationary variance");
  gen->add_option("--out", go.out);
  gen->add_option("--layout", go.layout)->capture_default_str();
  gen->add_option("--delimiter", go.delimiter)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*test) return cmd_test(t, out);
    if (*simulate) return cmd_simulate(so, out);
    if (*density) return cmd_density(ro, out);
    if (*solve) return cmd_solve(ro, out);
    if (*spectrum) return cmd_spectrum(ro, out);
    if (*gen) return cmd_generate(go, out);
    clt::ContourOptions contour;
    contour.nodes = co.nodes;
    if (*mean) {
      out << format_double(clt::clt_mean(parse_polynomial(co.f), co.c, rmt::SpectralDistribution::parse(co.h),
                                         moment_profile(co), {}, contour))
          << '\n';
    } else if (*cov) {
      const auto f1 = parse_polynomial(co.f);
      const auto f2 = co.f2.empty() ? f1 : parse_polynomial(co.f2);
      out << format_double(clt::clt_cov(f1, f2, co.c, parse_joint(co.joint), moment_profile(co), {},
                                        co.companion_side, contour))
          << '\n';
    } else if (*closed) {
      out << format_double(clt::lag_cov_closed_form(co.r, co.s, co.c, co.beta)) << '\n';
    } else if (*joint) {
      print_matrix(out, clt::joint_lag_cov_matrix(co.q, co.c, co.nu4).entries);
    } else if (*svar) {
      out << format_double(clt::s_variance(co.q, co.c, co.nu4)) << '\n';
    }
    return 0;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " [residual " << format_double(e.residual()) << ", iterations "
        << e.iterations() << "]\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace hdw::cli
