#include "cmpopt/acceptance.hpp"

#include "cmpopt/gde.hpp"
#include "cmpopt/harness.hpp"
#include "cmpopt/metrics.hpp"
#include "cmpopt/ngd.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

namespace cmpopt::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  Vector gaussian(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss_(engine_);
    return v;
  }
  Vector unit(Eigen::Index n) {
    Vector v;
    do {
      v = gaussian(n);
    } while (v.norm() == 0);
    return v / v.norm();
  }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(engine_)];
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_;
};

Vector linspace(Eigen::Index n, double lo, double hi) {
  return n == 1 ? Vector::Constant(1, lo) : Vector(Vector::LinSpaced(n, lo, hi));
}

Objective benchmark_with_params(const std::string& name, Eigen::Index n, Rng& rng,
                                double spectrum_hi) {
  BenchmarkParams p;
  p.center = rng.gaussian(n);
  if (name == "quadratic") p.spectrum = linspace(n, 1.0, spectrum_hi);
  return make_benchmark(name, n, p);
}

// Point around the minimizer whose gradient norm is at least gamma.
Vector sample_with_gradient(const Objective& f, Rng& rng, double gamma) {
  const Vector& c = *f.minimizer();
  for (;;) {
    const Vector x = c + rng.uniform(0.05, 4.0) * rng.unit(f.dim());
    if (f.gradient(x).norm() >= gamma) return x;
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Count DP calls of one direction estimate by walking its loop structure.
// Bisection length is the least m with 2^(m-1) >= 4 n^{3/2} / delta, found by
// doubling rather than by a logarithm.
std::uint64_t simulate_gde_calls(Eigen::Index n, double delta) {
  std::uint64_t calls = 0;
  for (Eigen::Index i = 0; i < n; ++i) ++calls;
  if (n == 1) return calls;
  for (Eigen::Index j = 1; j < n; ++j) ++calls;
  const double ratio = 4.0 * std::pow(static_cast<double>(n), 1.5) / delta;
  int m = 1;
  for (double p = 1.0; p < ratio; p *= 2.0) ++m;
  for (Eigen::Index i = 1; i < n; ++i) {
    for (int step = 0; step < m; ++step) ++calls;
  }
  return calls;
}

}  // namespace

CriterionResult gde_accuracy() {
  const auto t0 = Clock::now();
  CriterionResult r{1, "gde_accuracy", false, "", 0};
  constexpr double kGamma = 0.3;
  Rng rng(101);
  long long calls = 0, violations = 0;
  double worst_ratio = 0;
  for (const std::string name : {"quadratic", "log_quadratic"}) {
    for (Eigen::Index n : {2, 5, 20}) {
      for (double delta : {0.2, 0.05}) {
        const Objective f = benchmark_with_params(name, n, rng, 4.0);
        CountingOracle oracle(f);
        for (int p = 0; p < 100; ++p) {
          const Vector x = sample_with_gradient(f, rng, kGamma);
          const Vector g = f.gradient(x);
          const auto est = comparison_gde(oracle, f.smoothness(), x, delta, kGamma);
          const double err = (est.direction - g / g.norm()).norm();
          worst_ratio = std::max(worst_ratio, err / delta);
          ++calls;
          if (!(err <= delta)) ++violations;
        }
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = violations == 0 && r.seconds < 30.0;
  r.detail = std::to_string(calls) + " estimates, " + std::to_string(violations) +
             " violations, worst error/delta = " + fmt(worst_ratio);
  return r;
}

CriterionResult query_accounting() {
  const auto t0 = Clock::now();
  CriterionResult r{2, "query_accounting", false, "", 0};
  Rng rng(202);
  long long calls = 0, mismatches = 0;
  for (const std::string name : {"quadratic", "log_quadratic"}) {
    for (Eigen::Index n : {2, 5, 20}) {
      for (double delta : {0.2, 0.05}) {
        const Objective f = benchmark_with_params(name, n, rng, 4.0);
        CountingOracle oracle(f);
        const std::uint64_t budget = gde_query_budget(n, delta);
        if (budget != simulate_gde_calls(n, delta)) ++mismatches;
        for (int p = 0; p < 100; ++p) {
          const Vector x = sample_with_gradient(f, rng, 0.3);
          const std::uint64_t before = oracle.query_count();
          const auto est = comparison_gde(oracle, f.smoothness(), x, delta, 0.3);
          const std::uint64_t spent = oracle.query_count() - before;
          ++calls;
          if (spent != budget || est.queries_used != budget) ++mismatches;
        }
      }
    }
  }

  // The worked case: n = 2, delta = 0.1 costs 2 + 1 + 8 = 11 comparisons.
  const std::uint64_t simulated = simulate_gde_calls(2, 0.1);
  CountingOracle oracle(make_benchmark("quadratic", 2));
  comparison_gde(oracle, 1.0, Vector::Constant(2, 1.0), 0.1, 1.0);
  const bool worked_case = simulated == 11 && gde_query_budget(2, 0.1) == 11 &&
                           oracle.query_count() == 11;

  r.seconds = seconds_since(t0);
  r.passed = mismatches == 0 && worked_case;
  r.detail = std::to_string(calls) + " estimates, " + std::to_string(mismatches) +
             " ledger mismatches; n=2 delta=0.1: simulated " + std::to_string(simulated) +
             ", budget " + std::to_string(gde_query_budget(2, 0.1)) + ", ledger " +
             std::to_string(oracle.query_count());
  return r;
}

CriterionResult exact_ngd_bound() {
  const auto t0 = Clock::now();
  CriterionResult r{3, "exact_ngd_bound", false, "", 0};
  Rng rng(303);
  int runs = 0, violations = 0;
  double worst_ratio = 0;
  for (const auto& name : benchmark_names()) {
    for (Eigen::Index n : {2, 10}) {
      const Objective f = benchmark_with_params(name, n, rng, 5.0);
      const Vector& c = *f.minimizer();
      for (long long N : {50LL, 200LL, 1800LL}) {
        const Vector x1 = c + 2.0 * rng.unit(n);
        // Grow D until the run stays inside the D-ball.
        double D = (x1 - c).norm();
        RunTrace trace;
        for (;;) {
          trace = approx_adaptive_ngd(exact_direction_estimator(f), x1, D, N);
          if (check_hypotheses(trace, f, D).distance_ok) break;
          D *= 1.25;
        }
        const auto records = evaluate_trace(trace, f);
        double best = records.front().v_f;
        for (const auto& rec : records) best = std::min(best, rec.v_f);
        const double bound = ngd_error_bound(D, N, 0.0);
        worst_ratio = std::max(worst_ratio, best / bound);
        ++runs;
        if (!(best <= bound)) ++violations;
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = violations == 0 && r.seconds < 10.0;
  r.detail = std::to_string(runs) + " runs, " + std::to_string(violations) +
             " violations, worst min v_f / bound = " + fmt(worst_ratio);
  return r;
}

CriterionResult comparison_ngd_end_to_end() {
  const auto t0 = Clock::now();
  CriterionResult r{4, "comparison_ngd_end_to_end", false, "", 0};
  constexpr double kD = 3.0;
  constexpr double kMaxConstant = 40.0;
  Rng rng(404);
  int runs = 0, conclusive = 0, violations = 0, accounting_errors = 0;
  double worst_constant = 0, worst_ratio = 0;
  for (Eigen::Index n : {2, 5}) {
    for (double eps : {0.5, 0.3}) {
      BenchmarkParams p;
      p.center = rng.gaussian(n);
      p.spectrum = linspace(n, 1.0, 2.0);
      const Objective f = make_benchmark("quadratic", n, p);
      const Vector x1 = *f.minimizer() + 2.0 * rng.unit(n);
      CountingOracle oracle(f);
      const RunTrace trace = comparison_adangd(oracle, f.smoothness(), x1, kD, eps);
      const AdaNgdSchedule s = adangd_schedule(kD, eps);
      ++runs;

      const std::uint64_t expected = static_cast<std::uint64_t>(s.iterations) *
                                     gde_query_budget(n, s.delta);
      if (trace.total_queries() != expected || oracle.query_count() != expected ||
          trace.steps.size() != static_cast<std::size_t>(s.iterations)) {
        ++accounting_errors;
      }
      const double scale = n * kD * kD / (eps * eps) * std::log2(n * kD / eps);
      const double constant = static_cast<double>(expected) / scale;
      worst_constant = std::max(worst_constant, constant);

      const auto hyp = check_hypotheses(trace, f, kD, s.gamma, eps);
      if (hyp.conclusive()) {
        ++conclusive;
        const auto records = evaluate_trace(trace, f);
        double best = records.front().v_f;
        for (const auto& rec : records) best = std::min(best, rec.v_f);
        worst_ratio = std::max(worst_ratio, best / eps);
        if (!(best <= eps)) ++violations;
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = violations == 0 && accounting_errors == 0 && conclusive > 0 &&
             worst_constant <= kMaxConstant && r.seconds < 120.0;
  r.detail = std::to_string(runs) + " runs (" + std::to_string(conclusive) +
             " conclusive), " + std::to_string(violations) + " violations, worst min v_f/eps = " +
             fmt(worst_ratio) + ", " + std::to_string(accounting_errors) +
             " accounting errors, max C = " + fmt(worst_constant);
  return r;
}

CriterionResult dp_soundness() {
  const auto t0 = Clock::now();
  CriterionResult r{5, "dp_soundness", false, "", 0};
  constexpr int kTriples = 10000;
  Rng rng(505);
  long long checks = 0, violations = 0, geq = 0, leq = 0;
  for (const auto& name : benchmark_names()) {
    std::vector<Objective> objectives;
    for (Eigen::Index n : {1, 2, 5, 20}) {
      objectives.push_back(benchmark_with_params(name, n, rng, 6.0));
    }
    for (double overestimate : {1.0, 2.0}) {
      for (int t = 0; t < kTriples; ++t) {
        const Objective& f = rng.pick(objectives);
        const Eigen::Index n = f.dim();
        CountingOracle oracle(f);
        const Vector x = *f.minimizer() + rng.uniform(0.0, 4.0) * rng.unit(n);
        const Vector v = rng.unit(n);
        const double delta = rng.log_uniform(1e-4, 1.0);
        const double inner = f.gradient(x).dot(v);
        const DPAnswer a =
            directional_preference(oracle, overestimate * f.smoothness(), x, v, delta);
        ++checks;
        if (a == DPAnswer::GeqMinusDelta) {
          ++geq;
          if (!(inner >= -delta)) ++violations;
        } else {
          ++leq;
          if (!(inner <= delta)) ++violations;
        }
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = violations == 0 && geq > 0 && leq > 0;
  r.detail = std::to_string(checks) + " triples (" + std::to_string(geq) + " >= -D, " +
             std::to_string(leq) + " <= D), " + std::to_string(violations) + " violations";
  return r;
}

CriterionResult metric_properties() {
  const auto t0 = Clock::now();
  CriterionResult r{6, "metric_properties", false, "", 0};
  constexpr int kSamples = 100000;
  constexpr double kRelTol = 1e-12;
  Rng rng(606);
  long long failures = 0;
  for (int t = 0; t < kSamples; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + t % 10);
    const Vector g = rng.log_uniform(1e-6, 1e6) * rng.gaussian(n);
    const Vector x = rng.uniform(0.1, 10.0) * rng.gaussian(n);
    const Vector y = rng.uniform(0.1, 10.0) * rng.gaussian(n);
    const double scale = rng.log_uniform(1e-6, 1e6);
    const double dist = (x - y).norm();
    const double value = v_f(g, x, y);
    if (!(std::abs(value) <= dist * (1 + kRelTol))) ++failures;
    if (v_f(g, x, x) != 0.0) ++failures;
    if (!(std::abs(v_f(scale * g, x, y) - value) <= kRelTol * (1 + dist))) ++failures;
  }
  r.seconds = seconds_since(t0);
  r.passed = failures == 0;
  r.detail = std::to_string(kSamples) + " samples x 3 properties, " +
             std::to_string(failures) + " failures";
  return r;
}

CriterionResult reproducibility() {
  const auto t0 = Clock::now();
  CriterionResult r{7, "reproducibility", false, "", 0};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("cmpopt_repro_" + std::to_string(
                            Clock::now().time_since_epoch().count()));
  fs::create_directories(dir);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  std::vector<ExperimentConfig> configs(2);
  configs[0].benchmark = "quadratic";
  configs[0].dim = 2;
  configs[0].algorithm = Algorithm::ComparisonAdaNgd;
  configs[0].distance_bound = 3.0;
  configs[0].epsilon = 0.3;
  configs[0].seed = 1;
  configs[1].benchmark = "log_quadratic";
  configs[1].dim = 5;
  configs[1].algorithm = Algorithm::ApproxNgdWithGde;
  configs[1].distance_bound = 4.0;
  configs[1].iterations = 300;
  configs[1].delta = 0.1;
  configs[1].start_radius = 2.0;
  configs[1].seed = 99;

  int identical = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      ExperimentConfig c = configs[i];
      c.output_path = (dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".csv")).string();
      run_experiment(c);
      contents[rep] = slurp(c.output_path);
    }
    if (!contents[0].empty() && contents[0] == contents[1]) ++identical;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);

  r.seconds = seconds_since(t0);
  r.passed = identical == static_cast<int>(configs.size());
  r.detail = std::to_string(identical) + "/" + std::to_string(configs.size()) +
             " configs produced byte-identical CSV twice";
  return r;
}

std::vector<CriterionResult> run_all(std::ostream& out) {
  struct Entry {
    const char* name;
    CriterionResult (*run)();
  };
  const Entry criteria[] = {
      {"gde_accuracy", gde_accuracy},
      {"query_accounting", query_accounting},
      {"exact_ngd_bound", exact_ngd_bound},
      {"comparison_ngd_end_to_end", comparison_ngd_end_to_end},
      {"dp_soundness", dp_soundness},
      {"metric_properties", metric_properties},
      {"reproducibility", reproducibility},
  };
  std::vector<CriterionResult> results;
  int id = 0;
  for (const Entry& entry : criteria) {
    ++id;
    CriterionResult r{id, entry.name, false, "", 0};
    try {
      r = entry.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " " << r.name
        << ": " << r.detail << " (" << fmt(r.seconds) << " s)" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace cmpopt::acceptance
