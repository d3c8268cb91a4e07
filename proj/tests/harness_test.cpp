#include "cmpopt/harness.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cmpopt {
namespace {

namespace fs = std::filesystem;
using testing::vec;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("cmpopt_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig adangd_config() {
  ExperimentConfig c;
  c.benchmark = "quadratic";
  c.dim = 2;
  c.algorithm = Algorithm::ComparisonAdaNgd;
  c.distance_bound = 3.0;
  c.epsilon = 0.3;
  c.seed = 1;
  return c;
}

TEST(RunExperiment, ComparisonAdaNgdOnQuadratic) {
  const auto result = run_experiment(adangd_config());
  const SummaryReport& r = result.report;
  EXPECT_FALSE(r.failed);
  EXPECT_EQ(r.iterations, 1800);
  EXPECT_DOUBLE_EQ(r.delta, 0.05);
  EXPECT_LE(r.best_v_f, 0.3);
  EXPECT_EQ(r.total_queries, 1800u * 12u);
  EXPECT_EQ(r.oracle_queries, r.total_queries);
  EXPECT_NEAR(r.bound, 0.3, 1e-15);
  EXPECT_TRUE(r.bound_satisfied);
  EXPECT_TRUE(r.hypotheses.conclusive());
  EXPECT_EQ(result.records.size(), 1800u);
}

TEST(RunExperiment, ExactNgdOnQuadratic) {
  ExperimentConfig c;
  c.benchmark = "quadratic";
  c.dim = 2;
  c.algorithm = Algorithm::ExactNgd;
  c.distance_bound = 5.0;
  c.iterations = 200;
  c.x1 = vec({2, 1});
  const auto r = run_experiment(c).report;
  EXPECT_DOUBLE_EQ(r.bound, 0.75);
  EXPECT_LE(r.best_v_f, 0.75);
  EXPECT_TRUE(r.bound_satisfied);
  EXPECT_EQ(r.total_queries, 0u);
}

TEST(RunExperiment, ApproxNgdWithGdeDefaultsGamma) {
  ExperimentConfig c;
  c.benchmark = "exp_bump";
  c.dim = 3;
  c.algorithm = Algorithm::ApproxNgdWithGde;
  c.distance_bound = 2.0;
  c.iterations = 100;
  c.delta = 0.1;
  const auto r = run_experiment(c).report;
  ASSERT_TRUE(r.gamma.has_value());
  EXPECT_DOUBLE_EQ(*r.gamma, 0.4);
  EXPECT_EQ(r.total_queries, 100u * gde_query_budget(3, 0.1));
}

TEST(RunExperiment, StartPointIsSeededSphereSample) {
  ExperimentConfig c = adangd_config();
  c.start_radius = 2.0;
  const Objective f = make_benchmark("quadratic", 2);
  const Vector a = initial_point(c, f);
  EXPECT_NEAR(a.norm(), 2.0, 1e-14);
  EXPECT_EQ(initial_point(c, f), a);
  c.seed = 2;
  EXPECT_NE(initial_point(c, f), a);
  c.start_center = vec({10, 10});
  EXPECT_NEAR((initial_point(c, f) - vec({10, 10})).norm(), 2.0, 1e-14);
}

TEST(RunExperiment, NumericalFailureIsReportedWithPartialTrace) {
  ExperimentConfig c;
  c.benchmark = "quadratic";
  c.dim = 2;
  c.algorithm = Algorithm::ApproxNgdWithGde;
  c.distance_bound = 1e308;
  c.iterations = 5;
  c.delta = 0.5;
  c.gamma = 1.0;
  // f overflows to +inf everywhere nearby, every comparison ties, and the
  // resulting direction pushes the iterate past the largest double.
  c.x1 = vec({-1.5e308, -1.5e308});
  const auto result = run_experiment(c);
  EXPECT_TRUE(result.report.failed);
  EXPECT_FALSE(result.report.failure.empty());
  EXPECT_EQ(result.trace.steps.size(), 1u);
  EXPECT_EQ(result.records.size(), 1u);
}

TEST(Validate, FieldLevelErrors) {
  auto field_of = [](const ExperimentConfig& c) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(adangd_config()), "<none>");

  ExperimentConfig both = adangd_config();
  both.iterations = 10;
  both.delta = 0.1;
  EXPECT_EQ(field_of(both), "epsilon");
  EXPECT_THROW(run_experiment(both), ConfigError);

  ExperimentConfig c = adangd_config();
  c.epsilon.reset();
  EXPECT_EQ(field_of(c), "epsilon");
  c = adangd_config();
  c.epsilon = 7.0;
  EXPECT_EQ(field_of(c), "epsilon");
  c = adangd_config();
  c.benchmark = "himmelblau";
  EXPECT_EQ(field_of(c), "benchmark");
  c = adangd_config();
  c.distance_bound = -1;
  EXPECT_EQ(field_of(c), "D");
  c = adangd_config();
  c.x1 = vec({1, 2, 3});
  EXPECT_EQ(field_of(c), "x1");
  c = adangd_config();
  c.smoothness = 0.0;
  EXPECT_EQ(field_of(c), "L");

  ExperimentConfig exact;
  exact.algorithm = Algorithm::ExactNgd;
  exact.distance_bound = 1.0;
  EXPECT_EQ(field_of(exact), "iters");
  exact.iterations = 10;
  EXPECT_EQ(field_of(exact), "<none>");
  exact.gamma = 1.0;
  EXPECT_EQ(field_of(exact), "gamma");

  ExperimentConfig approx;
  approx.algorithm = Algorithm::ApproxNgdWithGde;
  approx.distance_bound = 1.0;
  approx.iterations = 10;
  EXPECT_EQ(field_of(approx), "delta");
  approx.delta = 0.0;
  EXPECT_EQ(field_of(approx), "delta");

  c = adangd_config();
  c.params.spectrum = vec({1, -1});
  EXPECT_THROW(run_experiment(c), ConfigError);

  EXPECT_THROW(parse_algorithm("sgd"), ConfigError);
  EXPECT_EQ(parse_algorithm("exact_ngd"), Algorithm::ExactNgd);
}

TEST(ParseVector, ReadsCommaSeparatedReals) {
  EXPECT_EQ(parse_vector("1,2.5,-3"), vec({1, 2.5, -3}));
  EXPECT_EQ(parse_vector(" 4 , +1e-3"), vec({4, 1e-3}));
  EXPECT_THROW(parse_vector(""), InvalidArgument);
  EXPECT_THROW(parse_vector("1,,2"), InvalidArgument);
  EXPECT_THROW(parse_vector("1,x"), InvalidArgument);
}

TEST(ParseConfigText, KeyValueLines) {
  const auto entries = parse_config_text(
      "# comment\n[run]\nbenchmark = quadratic\n\n  D=3 ; trailing\nx1 = -1, 2\r\n");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0], (std::pair<std::string, std::string>{"benchmark", "quadratic"}));
  EXPECT_EQ(entries[1], (std::pair<std::string, std::string>{"D", "3"}));
  EXPECT_EQ(entries[2], (std::pair<std::string, std::string>{"x1", "-1, 2"}));
  EXPECT_TRUE(parse_config_text("").empty());
  EXPECT_THROW(parse_config_text("dim 3\n"), ConfigError);
  EXPECT_THROW(parse_config_text(" = 3\n"), ConfigError);
}

TEST(WriteCsv, RowCountsAndFormat) {
  TempDir dir;
  const Objective f = make_benchmark("quadratic", 2);
  const RunTrace t = approx_adaptive_ngd(exact_direction_estimator(f), vec({1, 2}), 3.0, 3);
  write_csv(t, evaluate_trace(t, f), dir.file("three.csv"));
  const std::string text = slurp(dir.file("three.csv"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.back(), '\n');
  const auto rows = parse_csv(text);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"iter", "h_k", "queries_cum", "f_gap", "v_f", "dist"}));
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows[1][1], "2.1213203435596424");
  EXPECT_EQ(rows[2][1], "1.5");

  write_csv(RunTrace{}, {}, dir.file("empty.csv"));
  EXPECT_EQ(slurp(dir.file("empty.csv")), "iter,h_k,queries_cum,f_gap,v_f,dist\n");
}

TEST(WriteCsv, RoundTripsVf) {
  TempDir dir;
  ExperimentConfig c = adangd_config();
  c.benchmark = "log_quadratic";
  c.dim = 3;
  c.epsilon = 0.6;
  c.output_path = dir.file("trace.csv");
  const auto result = run_experiment(c);
  const auto rows = parse_csv(slurp(c.output_path));
  ASSERT_EQ(rows.size(), result.trace.steps.size() + 1);

  const Objective f = make_benchmark("log_quadratic", 3);
  double min_column = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
    const Vector& x = result.trace.steps[i].x;
    const double parsed = std::stod(rows[i + 1][4]);
    EXPECT_NEAR(parsed, v_f(f.gradient(x), x, *f.minimizer()), 1e-12);
    min_column = std::min(min_column, parsed);
  }
  EXPECT_EQ(min_column, result.report.best_v_f);
  EXPECT_EQ(std::stoull(rows.back()[2]), result.report.oracle_queries);
}

TEST(WriteCsv, ReproducibleBytes) {
  TempDir dir;
  ExperimentConfig c = adangd_config();
  c.output_path = dir.file("a.csv");
  run_experiment(c);
  c.output_path = dir.file("b.csv");
  run_experiment(c);
  EXPECT_EQ(slurp(dir.file("a.csv")), slurp(dir.file("b.csv")));
  EXPECT_FALSE(slurp(dir.file("a.csv")).empty());
}

TEST(WriteCsv, IoErrorNamesPath) {
  const std::string path = "/nonexistent-dir/for/sure/trace.csv";
  try {
    write_csv(RunTrace{}, {}, path);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST(PrintReport, ContainsVerdict) {
  const auto r = run_experiment(adangd_config()).report;
  std::ostringstream out;
  print_report(out, r);
  const std::string text = out.str();
  EXPECT_NE(text.find("total_queries = 21600\n"), std::string::npos);
  EXPECT_NE(text.find("verdict = bound-satisfied\n"), std::string::npos);
  EXPECT_NE(text.find("status = ok\n"), std::string::npos);
}

}  // namespace
}  // namespace cmpopt
