#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hdw/io/format.hpp"
#include "hdw/rmt/spectral_distribution.hpp"
#include "hdw/sim/montecarlo.hpp"

using namespace hdw;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hdw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "hdw_cli_" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string zeros_file() {
  const std::string path = temp_path("zeros.csv");
  std::string text;
  for (int t = 0; t < 12; ++t) text += "0,0,0,0\n";
  write_file(path, text);
  return path;
}

double value_of(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  if (pos == std::string::npos) throw std::runtime_error("missing key " + key);
  const auto end = text.find('\n', pos);
  return io::parse_double(text.substr(pos + key.size() + 1, end - pos - key.size() - 1));
}

const char* kExperiment = R"(schema = 1
[defaults]
reps = 40
seed = 11
methods = ["phi", "john"]
[[experiment]]
scenario = "gaussian_ar1"
p = 10
n = 30
a = 0.0
[[experiment]]
scenario = "gaussian_ar1"
p = 10
n = 30
a = 0.4
)";

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, cli::kError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
  EXPECT_EQ(run({"test"}).code, cli::kError);
  EXPECT_EQ(run({"rmt", "solve", "--c", "abc"}).code, cli::kError);
}

TEST(Cli, TestZeroFileAccepts) {
  const Result r = run({"test", zeros_file(), "--method", "phi", "--nu4", "3"});
  EXPECT_EQ(r.code, cli::kAccept) << r.err;
  EXPECT_NE(r.out.find("reject=false"), std::string::npos);
  EXPECT_NE(r.out.find("method,p,n,q,c_n,nu4,alpha,statistic"), std::string::npos);
  EXPECT_EQ(value_of(r.out, "p"), 4.0);
  EXPECT_EQ(value_of(r.out, "n"), 12.0);
}

TEST(Cli, TestZeroFileWithAutoNu4IsAnError) {
  const Result r = run({"test", zeros_file()});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, PermutationOnZeroFile) {
  const Result r = run({"test", zeros_file(), "--method", "perm", "--B", "100", "--seed", "5"});
  EXPECT_EQ(r.code, cli::kAccept) << r.err;
  EXPECT_EQ(value_of(r.out, "p_value"), 1.0);
}

TEST(Cli, GeneratedAlternativeIsRejected) {
  const std::string path = temp_path("ar.csv");
  const Result g = run({"generate", "--scenario", "gaussian_ar1", "--p", "100", "--n", "600", "--a", "0.1",
                        "--seed", "2024", "--out", path});
  ASSERT_EQ(g.code, 0) << g.err;
  const Result r = run({"test", path, "--q", "1", "--nu4", "3"});
  EXPECT_EQ(r.code, cli::kReject) << r.err;
  const Result j = run({"test", path, "--q", "1", "--method", "john", "--nu4", "3"});
  EXPECT_NE(j.out.find("p_values="), std::string::npos);
  EXPECT_TRUE(j.code == cli::kAccept || j.code == cli::kReject);
}

TEST(Cli, TestInputErrors) {
  EXPECT_EQ(run({"test", temp_path("missing.csv")}).code, cli::kError);
  const std::string bad = temp_path("bad.csv");
  write_file(bad, "1,2\n3,x\n");
  EXPECT_EQ(run({"test", bad}).code, cli::kError);
  EXPECT_EQ(run({"test", zeros_file(), "--q", "12", "--nu4", "3"}).code, cli::kError);
  EXPECT_EQ(run({"test", zeros_file(), "--method", "hosking"}).code, cli::kError);
  EXPECT_EQ(run({"test", zeros_file(), "--layout", "sideways"}).code, cli::kError);
}

TEST(Cli, LayoutAndHeader) {
  const std::string path = temp_path("coords.tsv");
  write_file(path, "x1\tx2\tx3\n1\t2\t3\n4\t5\t7\n");
  const Result a = run({"test", path, "--layout", "rows_are_coords", "--delimiter", "\t", "--header", "--nu4", "3"});
  EXPECT_NE(a.code, cli::kError) << a.err;
  EXPECT_EQ(value_of(a.out, "p"), 2.0);
  EXPECT_EQ(value_of(a.out, "n"), 3.0);
}

TEST(Cli, RmtSpectrum) {
  const Result r = run({"rmt", "spectrum", "--n", "4", "--tau", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-1, 0, 0, 1\n");
}

TEST(Cli, RmtSolveArcsine) {
  const Result r = run({"rmt", "solve", "--c", "0.5", "--H", "arcsine", "--z-re", "0", "--z-im", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const cplx m_bar{value_of(r.out, "m_bar_re"), value_of(r.out, "m_bar_im")};
  const cplx z{0.0, 2.0};
  const cplx rhs = -1.0 / m_bar + 0.5 * rmt::SpectralDistribution::arcsine().resolvent1(m_bar);
  EXPECT_LT(std::abs(z - rhs), 1e-8);
  EXPECT_LT(value_of(r.out, "residual"), 1e-8);
}

TEST(Cli, RmtDensityMatchesMarchenkoPastur) {
  const Result r = run({"rmt", "density", "--c", "1", "--H", "point 1", "--x-min", "0", "--x-max", "4.5",
                        "--points", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,density");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double x = io::parse_double(line.substr(0, comma));
    const double d = io::parse_double(line.substr(comma + 1));
    ++rows;
    if (x > 4.0) {
      EXPECT_LT(d, 1e-4);
    } else if (x > 0.2) {
      EXPECT_NEAR(d, std::sqrt((4.0 - x) * x) / (2.0 * std::numbers::pi * x), 2e-3) << x;
    }
  }
  EXPECT_EQ(rows, 10);
}

TEST(Cli, RmtSolverErrorsReportResidual) {
  EXPECT_EQ(run({"rmt", "solve", "--c", "-1", "--H", "point 1", "--z-im", "1"}).code, cli::kError);
  const Result r = run({"rmt", "solve", "--c", "0.5", "--H", "arcsine", "--z-re", "0.1", "--z-im", "1e-9",
                        "--max-iter", "1", "--tol", "1e-15"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("residual"), std::string::npos) << r.err;
}

TEST(Cli, CltCommands) {
  EXPECT_EQ(run({"clt", "closed", "--r", "1", "--s", "2", "--c", "0.5"}).out, "4\n");
  EXPECT_EQ(run({"clt", "svar", "--q", "3", "--c", "0.5", "--nu4", "3"}).out, "13.5\n");
  const Result mean = run({"clt", "mean", "--f", "0,0,1", "--c", "0.5", "--H", "point 1", "--nu4", "4.5"});
  ASSERT_EQ(mean.code, 0) << mean.err;
  EXPECT_NEAR(io::parse_double(mean.out), 1.25, 1e-8);
  const Result cov = run({"clt", "cov", "--f", "0,1", "--c", "0.5", "--joint", "with_point 1 point 1"});
  ASSERT_EQ(cov.code, 0) << cov.err;
  EXPECT_NEAR(io::parse_double(cov.out), 1.0, 1e-6);
  const Result joint = run({"clt", "joint", "--q", "2", "--c", "0.5", "--nu4", "3"});
  EXPECT_EQ(joint.code, 0);
  EXPECT_NE(joint.out.find("2.5"), std::string::npos);
}

TEST(Cli, SimulateIsDeterministicAndRoundTrips) {
  const std::string exp = temp_path("exp.toml");
  write_file(exp, kExperiment);
  const Result a = run({"simulate", exp});
  const Result b = run({"simulate", exp, "--threads", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto table = sim::ResultTable::from_csv(a.out);
  EXPECT_EQ(table.rows().size(), 4u);
  EXPECT_EQ(table.to_csv(), a.out);

  const std::string out = temp_path("table.csv");
  EXPECT_EQ(run({"simulate", exp, "--out", out}).code, 0);
  EXPECT_EQ(read_file(out), a.out);
}

TEST(Cli, SimulateSingleReplicate) {
  const std::string exp = temp_path("one.toml");
  write_file(exp, "schema = 1\n[[experiment]]\nscenario = \"gaussian_wn\"\np = 5\nn = 20\nreps = 1\n");
  const Result r = run({"simulate", exp});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = sim::ResultTable::from_csv(r.out);
  for (const auto& row : table.rows()) {
    EXPECT_TRUE(row.rejection_rate == 0.0 || row.rejection_rate == 1.0);
  }
}

TEST(Cli, SimulateSchemaErrors) {
  const std::string exp = temp_path("bad.toml");
  write_file(exp, "schema = 3\n[[experiment]]\nscenario = \"gaussian_wn\"\np = 5\nn = 20\n");
  EXPECT_EQ(run({"simulate", exp}).code, cli::kError);
  EXPECT_EQ(run({"simulate", temp_path("absent.toml")}).code, cli::kError);
}

TEST(Cli, BundledSizeExperimentFallsInBands) {
  const Result r = run({"simulate", std::string(HDW_EXPERIMENTS_DIR) + "/table1_desk.toml"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::map<Index, double> phi_targets{{50, 0.066}, {90, 0.051}, {150, 0.042}};
  int checked = 0;
  const auto table = sim::ResultTable::from_csv(r.out);
  for (const auto& row : table.rows()) {
    if (row.method != "phi") continue;
    EXPECT_NEAR(row.rejection_rate, phi_targets.at(row.p), 0.02) << row.p;
    ++checked;
  }
  EXPECT_EQ(checked, 3);
}
