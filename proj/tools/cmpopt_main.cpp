// Command-line front end: run single experiments, print query budgets and
// run the acceptance checks.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 acceptance violation.

#include "cmpopt/acceptance.hpp"
#include "cmpopt/gde.hpp"
#include "cmpopt/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAcceptance = 4;

struct RunOptions {
  std::string benchmark;
  long long dim = 0;
  std::string algorithm;
  double D = 0;
  std::optional<double> L;
  std::optional<double> epsilon;
  std::optional<long long> iters;
  std::optional<double> delta;
  std::optional<double> gamma;
  std::optional<std::string> x1;
  std::optional<std::string> center;
  std::optional<std::string> spectrum;
  std::optional<std::string> start_center;
  double radius = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

cmpopt::Vector vector_field(const std::string& field, const std::string& text) {
  try {
    return cmpopt::parse_vector(text);
  } catch (const cmpopt::InvalidArgument& e) {
    throw cmpopt::ConfigError(field, e.what());
  }
}

cmpopt::ExperimentConfig to_config(const RunOptions& o) {
  cmpopt::ExperimentConfig c;
  c.benchmark = o.benchmark;
  c.dim = o.dim;
  c.algorithm = cmpopt::parse_algorithm(o.algorithm);
  c.distance_bound = o.D;
  c.smoothness = o.L;
  c.epsilon = o.epsilon;
  c.iterations = o.iters;
  c.delta = o.delta;
  c.gamma = o.gamma;
  if (o.x1) c.x1 = vector_field("x1", *o.x1);
  if (o.center) c.params.center = vector_field("center", *o.center);
  if (o.spectrum) c.params.spectrum = vector_field("spectrum", *o.spectrum);
  if (o.start_center) c.start_center = vector_field("start_center", *o.start_center);
  c.start_radius = o.radius;
  c.seed = o.seed;
  c.output_path = o.out;
  return c;
}

// Splices `--config <file>` entries in right after the `run` token so that
// flags given on the command line come later and win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto run = std::find(args.begin(), args.end(), "run");
  if (run == args.end()) return args;
  const auto run_pos = static_cast<std::size_t>(run - args.begin());

  std::optional<std::string> path;
  for (std::size_t i = run_pos + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  std::ifstream in(*path, std::ios::binary);
  if (!in) throw cmpopt::ConfigError("config", "cannot read '" + *path + "'");
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  std::vector<std::string> injected;
  for (auto [key, value] : cmpopt::parse_config_text(text)) {
    std::replace(key.begin(), key.end(), '_', '-');
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(run_pos + 1), injected.begin(),
              injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-oracle normalized gradient descent toolkit", "cmpopt"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Run one experiment and print its summary");
  run->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  run->add_option("--config", config_path,
                  "Read `key = value` settings from a file; flags override it");
  run->add_option("--benchmark", ro.benchmark, "quadratic | log_quadratic | exp_bump")->required();
  run->add_option("--dim", ro.dim, "Dimension n")->required();
  run->add_option("--algorithm", ro.algorithm,
                  "comparison_adangd | exact_ngd | approx_ngd_with_gde")->required();
  run->add_option("--D", ro.D, "Distance bound D")->required();
  run->add_option("--L", ro.L, "Smoothness constant (default: the benchmark's)");
  run->add_option("--epsilon", ro.epsilon, "Target accuracy (comparison_adangd)");
  run->add_option("--iters", ro.iters, "Iteration count N");
  run->add_option("--delta", ro.delta, "Direction precision");
  run->add_option("--gamma", ro.gamma, "Gradient lower bound (approx_ngd_with_gde)");
  run->add_option("--x1", ro.x1, "Initial point v1,v2,...");
  run->add_option("--center", ro.center, "Benchmark minimizer c");
  run->add_option("--spectrum", ro.spectrum, "Quadratic diagonal a");
  run->add_option("--start-center", ro.start_center, "Center of the start sphere");
  run->add_option("--radius", ro.radius, "Radius of the start sphere");
  run->add_option("--seed", ro.seed, "RNG seed for the start point");
  run->add_option("--out", ro.out, "CSV trace path");

  long long budget_dim = 0;
  double budget_delta = 0;
  auto* budget = app.add_subcommand("budget", "Print the comparisons used per direction estimate");
  budget->add_option("--dim", budget_dim, "Dimension n")->required();
  budget->add_option("--delta", budget_delta, "Precision delta")->required();

  app.add_subcommand("verify", "Run the acceptance checks");

  try {
    std::vector<std::string> args = expand_config({argv + 1, argv + argc});
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const cmpopt::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (*budget) {
    try {
      std::cout << cmpopt::gde_query_budget(budget_dim, budget_delta) << '\n';
    } catch (const cmpopt::InvalidArgument& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return kExitConfig;
    }
    return 0;
  }

  if (*run) {
    try {
      const auto result = cmpopt::run_experiment(to_config(ro));
      cmpopt::print_report(std::cout, result.report);
      return result.report.failed ? kExitNumerical : 0;
    } catch (const cmpopt::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const cmpopt::IoError& e) {
      std::cerr << "i/o error: " << e.what() << '\n';
      return 1;
    }
  }

  // verify
  bool ok = true;
  for (const auto& r : cmpopt::acceptance::run_all(std::cout)) ok = ok && r.passed;
  std::cout << (ok ? "all acceptance criteria passed" : "acceptance violations found") << '\n';
  return ok ? 0 : kExitAcceptance;
}
