#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "hdw/io/csv.hpp"
#include "hdw/io/experiment.hpp"
#include "hdw/io/format.hpp"
#include "hdw/io/reports.hpp"
#include "hdw/io/toml_lite.hpp"

using namespace hdw;
using namespace hdw::io;

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> z;
  for (int k = 0; k < 1000; ++k) {
    const double v = z(gen) * std::pow(10.0, k % 21 - 10);
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(parse_double(" +1.5\r"), 1.5);
  EXPECT_EQ(parse_int(" 42 "), 42);
  EXPECT_THROW(parse_double("1.5x"), ParameterError);
  EXPECT_THROW(parse_double(""), ParameterError);
  EXPECT_THROW(parse_int("3.0"), ParameterError);
}

TEST(Csv, ReadTable) {
  std::istringstream in("a,b,c\n1,2,3\n\n4,5,6\n");
  const Eigen::MatrixXd t = read_table(in, ',', true);
  EXPECT_EQ(t, (Eigen::Matrix<double, 2, 3>() << 1, 2, 3, 4, 5, 6).finished());
  std::istringstream tabs("1\t2\n3\t4\n");
  EXPECT_EQ(read_table(tabs, '\t', false), (Eigen::Matrix2d() << 1, 2, 3, 4).finished());
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_table(ragged, ',', false), ParameterError);
  std::istringstream junk("1,x\n");
  EXPECT_THROW(read_table(junk, ',', false), ParameterError);
  std::istringstream empty("");
  EXPECT_THROW(read_table(empty, ',', false), ParameterError);
}

TEST(Csv, LayoutsRoundTrip) {
  EXPECT_EQ(parse_layout("rows_are_time"), Layout::rows_are_time);
  EXPECT_EQ(parse_layout("rows_are_coords"), Layout::rows_are_coords);
  EXPECT_THROW(parse_layout("columns"), ParameterError);

  std::mt19937_64 gen(4);
  std::normal_distribution<double> z;
  Eigen::MatrixXd X(3, 7);
  for (Index j = 0; j < 7; ++j)
    for (Index i = 0; i < 3; ++i) X(i, j) = z(gen);

  const std::string path = ::testing::TempDir() + "hdw_io_roundtrip.csv";
  for (Layout layout : {Layout::rows_are_time, Layout::rows_are_coords}) {
    for (char delim : {',', ';'}) {
      {
        std::ofstream out(path);
        write_sample(out, X, layout, delim);
      }
      const auto s = read_sample({path, layout, delim, false});
      EXPECT_EQ(s.data(), X);
    }
  }
  std::remove(path.c_str());
  EXPECT_THROW(read_sample({path, Layout::rows_are_time, ',', false}), ParameterError);
}

TEST(Toml, ParsesSubset) {
  const auto t = toml::parse_string(R"(# comment
schema = 1
name = "x # not a comment"
rate = 2.5e-1
flag = true
list = ["phi", "john"]   # trailing
nums = [1, 2.5, -3]

[defaults]
reps = 10

[[experiment]]
p = 5
[[experiment]]
p = 6
)");
  EXPECT_EQ(t.at("schema").as_int(), 1);
  EXPECT_EQ(t.at("name").as_string(), "x # not a comment");
  EXPECT_EQ(t.at("rate").as_double(), 0.25);
  EXPECT_TRUE(t.at("flag").as_bool());
  ASSERT_EQ(t.at("list").array.size(), 2u);
  EXPECT_EQ(t.at("list").array[1].as_string(), "john");
  EXPECT_EQ(t.at("nums").array[2].as_double(), -3.0);
  EXPECT_EQ(t.at("schema").as_double(), 1.0);
  EXPECT_EQ(t.tables.at("defaults").at("reps").as_int(), 10);
  ASSERT_EQ(t.arrays.at("experiment").size(), 2u);
  EXPECT_EQ(t.arrays.at("experiment")[1].at("p").as_int(), 6);
  EXPECT_THROW(t.at("missing"), ParameterError);
  EXPECT_THROW(t.at("name").as_int(), ParameterError);
}

TEST(Toml, RejectsMalformedInput) {
  EXPECT_THROW(toml::parse_string("a = \n"), ParameterError);
  EXPECT_THROW(toml::parse_string("a = \"open\n"), ParameterError);
  EXPECT_THROW(toml::parse_string("a = 1\na = 2\n"), ParameterError);
  EXPECT_THROW(toml::parse_string("[t\n"), ParameterError);
  EXPECT_THROW(toml::parse_string("just words\n"), ParameterError);
  EXPECT_THROW(toml::parse_string("a = [1, 2\n"), ParameterError);
}

TEST(Experiment, DefaultsAndOverrides) {
  std::istringstream in(R"(schema = 1
[defaults]
reps = 100
methods = ["phi", "john"]
seed = 7
[[experiment]]
scenario = "gaussian_wn"
p = 50
n = 100
[[experiment]]
scenario = "gamma_ar1"
p = 20
n = 40
a = 0.1
q = 2
reps = 30
methods = ["perm"]
B = 50
unit_variance = true
nu4 = 4
)");
  const auto cfgs = parse_experiment(in);
  ASSERT_EQ(cfgs.size(), 2u);
  EXPECT_EQ(cfgs[0].scenario.scenario, sim::Scenario::gaussian_wn);
  EXPECT_EQ(cfgs[0].reps, 100);
  EXPECT_EQ(cfgs[0].base_seed, 7u);
  EXPECT_EQ(cfgs[0].methods, (std::vector<sim::Method>{sim::Method::phi, sim::Method::john_simes}));
  EXPECT_FALSE(cfgs[0].nu4.has_value());
  EXPECT_EQ(cfgs[1].scenario.a, 0.1);
  EXPECT_TRUE(cfgs[1].scenario.unit_variance);
  EXPECT_EQ(cfgs[1].q, 2);
  EXPECT_EQ(cfgs[1].reps, 30);
  EXPECT_EQ(cfgs[1].B, 50);
  EXPECT_EQ(cfgs[1].nu4, 4.0);
  EXPECT_EQ(cfgs[1].methods, std::vector<sim::Method>{sim::Method::permutation});
}

TEST(Experiment, RejectsBadFiles) {
  const std::string body = "[[experiment]]\nscenario = \"gaussian_wn\"\np = 5\nn = 10\n";
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_experiment(in);
  };
  EXPECT_NO_THROW(parse("schema = 1\n" + body));
  EXPECT_THROW(parse(body), ParameterError);
  EXPECT_THROW(parse("schema = 2\n" + body), ParameterError);
  EXPECT_THROW(parse("schema = 1\n" + body + "colour = 3\n"), ParameterError);
  EXPECT_THROW(parse("schema = 1\n[[experiment]]\np = 5\nn = 10\n"), ParameterError);
  EXPECT_THROW(parse("schema = 1\n" + body + "a = 0.5\n"), ParameterError);
  EXPECT_THROW(parse("schema = 1\n"), ParameterError);
  EXPECT_THROW(load_experiment("/nonexistent/experiment.toml"), ParameterError);
}

TEST(Experiment, RunConcatenatesTables) {
  std::istringstream in(R"(schema = 1
[defaults]
reps = 20
seed = 3
[[experiment]]
scenario = "gaussian_ar1"
p = 10
n = 30
a = 0.0
[[experiment]]
scenario = "gaussian_ar1"
p = 10
n = 30
a = 0.5
)");
  const auto t = run_experiment(parse_experiment(in));
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_EQ(t.rows()[0].a, 0.0);
  EXPECT_EQ(t.rows()[1].a, 0.5);
}

TEST(Reports, TestReportSerialization) {
  wn::TestReport r;
  r.statistic = 1.5;
  r.z_score = 0.25;
  r.p_value = 0.4;
  r.critical_value = 3.0;
  r.reject = false;
  r.params = {50, 100, 1, 0.5, 3.0, 0.05, "phi"};
  EXPECT_EQ(to_key_value(r),
            "method=phi\np=50\nn=100\nq=1\nc_n=0.5\nnu4=3\nalpha=0.05\nstatistic=1.5\nz_score=0.25\n"
            "p_value=0.4\ncritical_value=3\nreject=false\n");
  EXPECT_EQ(to_csv_row(r), "phi,50,100,1,0.5,3,0.05,1.5,0.25,0.4,3,0");
  const std::string_view header = kTestReportHeader;
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 11);
}

TEST(Reports, SimesReportSerialization) {
  const wn::SimesReport r{{1.0, 2.0}, {0.01, 0.5}, {0.01, 0.5}, true, 0.05, {10, 20, 1, 0.5, 3.0, 0.05, "john"}};
  EXPECT_EQ(to_csv_row(r), "john,10,20,1,0.5,3,0.05,1;2,0.01;0.5,1");
  EXPECT_NE(to_key_value(r).find("sorted=0.01;0.5\n"), std::string::npos);
  EXPECT_NE(to_key_value(r).find("reject=true\n"), std::string::npos);
}
