#pragma once

#include "cmpopt/metrics.hpp"
#include "cmpopt/ngd.hpp"
#include "cmpopt/objective.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmpopt {

enum class Algorithm { ComparisonAdaNgd, ExactNgd, ApproxNgdWithGde };

std::string_view to_string(Algorithm algorithm);
/// Accepts comparison_adangd, exact_ngd, approx_ngd_with_gde.
Algorithm parse_algorithm(std::string_view name);

/// Invalid experiment configuration. field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string benchmark = "quadratic";
  BenchmarkParams params;
  Algorithm algorithm = Algorithm::ComparisonAdaNgd;
  Eigen::Index dim = 2;

  /// Explicit start; otherwise sampled uniformly on the sphere of
  /// `start_radius` around `start_center` (default: the minimizer).
  std::optional<Vector> x1;
  double start_radius = 1.0;
  std::optional<Vector> start_center;

  double distance_bound = 0;        ///< D
  std::optional<double> smoothness; ///< L; defaults to the benchmark's
  std::optional<double> epsilon;    ///< comparison_adangd only
  std::optional<long long> iterations;
  std::optional<double> delta;      ///< approx_ngd_with_gde; exact_ngd: 0
  std::optional<double> gamma;      ///< approx_ngd_with_gde; default 2*D*delta
  std::uint64_t seed = 1;
  std::string output_path;
};

/// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig& config);

/// x1 from the config, or the seeded sphere sample.
Vector initial_point(const ExperimentConfig& config, const Objective& objective);

struct SummaryReport {
  ExperimentConfig config;
  bool failed = false;
  std::string failure;

  long long iterations = 0;
  double delta = 0;
  std::optional<double> gamma;

  double best_v_f = 0;
  long long best_iter = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t oracle_queries = 0;  ///< ledger of the run's oracle
  double bound = 0;
  bool bound_satisfied = false;
  HypothesisReport hypotheses;
};

struct ExperimentResult {
  SummaryReport report;
  RunTrace trace;
  std::vector<EvalRecord> records;
};

/// Validate, build the benchmark and oracle, run the configured driver,
/// evaluate every iterate and write the CSV if output_path is set.
///
/// A numerical failure in the driver does not throw: the report is marked
/// failed and the partial trace is kept. Throws ConfigError for invalid
/// configs and IoError if the CSV cannot be written.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// `iter,h_k,queries_cum,f_gap,v_f,dist`, one row per record, 17 significant
/// digits, locale-independent.
std::string format_csv(const RunTrace& trace,
                       const std::vector<EvalRecord>& records);
void write_csv(const RunTrace& trace, const std::vector<EvalRecord>& records,
               const std::string& path);

/// Human-readable `key = value` report.
void print_report(std::ostream& out, const SummaryReport& report);

/// Entries of a line-oriented `key = value` file. Blank lines, `#`/`;`
/// comments and `[section]` headers are skipped. Throws ConfigError for a
/// line without `=` or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

/// Comma separated list of reals, e.g. "1,2.5,-3".
Vector parse_vector(std::string_view text);
std::string format_double(double value);

}  // namespace cmpopt
