#include "cmpopt/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace cmpopt {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ComparisonAdaNgd: return "comparison_adangd";
    case Algorithm::ExactNgd: return "exact_ngd";
    case Algorithm::ApproxNgdWithGde: return "approx_ngd_with_gde";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::ComparisonAdaNgd, Algorithm::ExactNgd,
                      Algorithm::ApproxNgdWithGde}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("algorithm", "unknown algorithm '" + std::string(name) + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Vector parse_vector(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    double v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw InvalidArgument("cannot parse '" + std::string(text) + "' as a list of reals");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = std::min(text.find('\n'), text.size());
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(std::min(eol + 1, text.size()));

    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty() || line.front() == '[') continue;
    const std::size_t eq = line.find('=');
    const std::string_view key = eq == std::string_view::npos ? line : trim(line.substr(0, eq));
    if (eq == std::string_view::npos || key.empty()) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected `key = value`");
    }
    entries.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return entries;
}

void validate(const ExperimentConfig& c) {
  const auto& names = benchmark_names();
  if (std::find(names.begin(), names.end(), c.benchmark) == names.end()) {
    throw ConfigError("benchmark", "unknown benchmark '" + c.benchmark + "'");
  }
  if (c.dim < 1) throw ConfigError("dim", "must be >= 1");
  if (!(c.distance_bound > 0) || !std::isfinite(c.distance_bound)) {
    throw ConfigError("D", "must be a positive finite real");
  }
  if (c.smoothness && !(*c.smoothness > 0 && std::isfinite(*c.smoothness))) {
    throw ConfigError("L", "must be a positive finite real");
  }
  if (c.x1) {
    if (c.x1->size() != c.dim) throw ConfigError("x1", "length must equal dim");
    if (!c.x1->allFinite()) throw ConfigError("x1", "entries must be finite");
  }
  if (!(c.start_radius >= 0) || !std::isfinite(c.start_radius)) {
    throw ConfigError("radius", "must be a non-negative finite real");
  }
  if (c.start_center && c.start_center->size() != c.dim) {
    throw ConfigError("start_center", "length must equal dim");
  }

  switch (c.algorithm) {
    case Algorithm::ComparisonAdaNgd:
      if (c.iterations || c.delta) {
        throw ConfigError("epsilon", "comparison_adangd takes epsilon, not iters/delta");
      }
      if (!c.epsilon) throw ConfigError("epsilon", "required by comparison_adangd");
      if (c.gamma) throw ConfigError("gamma", "comparison_adangd derives gamma = epsilon");
      if (!(*c.epsilon > 0)) throw ConfigError("epsilon", "must be positive");
      if (*c.epsilon > 2 * c.distance_bound) {
        throw ConfigError("epsilon", "must not exceed 2D");
      }
      break;
    case Algorithm::ExactNgd:
    case Algorithm::ApproxNgdWithGde: {
      const bool gde = c.algorithm == Algorithm::ApproxNgdWithGde;
      if (c.epsilon) {
        throw ConfigError("epsilon", std::string(to_string(c.algorithm)) +
                                         " takes iters/delta, not epsilon");
      }
      if (!c.iterations) throw ConfigError("iters", "required");
      if (*c.iterations < 1) throw ConfigError("iters", "must be >= 1");
      if (gde && !c.delta) throw ConfigError("delta", "required by approx_ngd_with_gde");
      if (c.delta) {
        const double d = *c.delta;
        const bool ok = gde ? (d > 0 && d <= 1) : (d >= 0 && d <= 1);
        if (!ok) throw ConfigError("delta", gde ? "must lie in (0, 1]" : "must lie in [0, 1]");
      }
      if (c.gamma && (!gde || !(*c.gamma > 0))) {
        throw ConfigError("gamma", gde ? "must be positive" : "only used by approx_ngd_with_gde");
      }
      break;
    }
  }
}

Vector initial_point(const ExperimentConfig& config, const Objective& objective) {
  if (config.x1) return *config.x1;
  const Vector center = config.start_center
                            ? *config.start_center
                            : objective.minimizer().value_or(Vector(Vector::Zero(config.dim)));
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss;
  Vector u(config.dim);
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = gauss(rng);
  } while (u.norm() == 0);
  return center + (config.start_radius / u.norm()) * u;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);

  std::optional<Objective> built;
  try {
    built = make_benchmark(config.benchmark, config.dim, config.params);
  } catch (const std::exception& e) {
    throw ConfigError("benchmark", e.what());
  }
  const Objective& objective = *built;
  const double smoothness = config.smoothness.value_or(objective.smoothness());
  const double D = config.distance_bound;
  const Vector x1 = initial_point(config, objective);
  CountingOracle oracle(objective);

  ExperimentResult result;
  SummaryReport& rep = result.report;
  rep.config = config;

  DirectionEstimator estimator;
  switch (config.algorithm) {
    case Algorithm::ComparisonAdaNgd: {
      const AdaNgdSchedule s = adangd_schedule(D, *config.epsilon);
      rep.iterations = s.iterations;
      rep.delta = s.delta;
      rep.gamma = s.gamma;
      estimator = gde_direction_estimator(oracle, smoothness, s.delta, s.gamma);
      break;
    }
    case Algorithm::ExactNgd:
      rep.iterations = *config.iterations;
      rep.delta = config.delta.value_or(0.0);
      estimator = exact_direction_estimator(objective);
      break;
    case Algorithm::ApproxNgdWithGde:
      rep.iterations = *config.iterations;
      rep.delta = *config.delta;
      rep.gamma = config.gamma.value_or(2.0 * D * rep.delta);
      estimator = gde_direction_estimator(oracle, smoothness, rep.delta, *rep.gamma);
      break;
  }

  try {
    result.trace = approx_adaptive_ngd(estimator, x1, D, rep.iterations);
  } catch (const NumericalFailure& e) {
    rep.failed = true;
    rep.failure = e.what();
    result.trace = e.trace();
  }

  result.records = evaluate_trace(result.trace, objective);
  rep.total_queries = result.trace.total_queries();
  rep.oracle_queries = oracle.query_count();
  rep.bound = ngd_error_bound(D, rep.iterations, rep.delta);
  if (!result.records.empty()) {
    const auto best = std::min_element(
        result.records.begin(), result.records.end(),
        [](const EvalRecord& a, const EvalRecord& b) { return a.v_f < b.v_f; });
    rep.best_v_f = best->v_f;
    rep.best_iter = best->k;
  }
  rep.bound_satisfied = !result.records.empty() && rep.best_v_f <= rep.bound;
  rep.hypotheses = check_hypotheses(result.trace, objective, D, rep.gamma, rep.bound);

  if (!config.output_path.empty()) {
    write_csv(result.trace, result.records, config.output_path);
  }
  return result;
}

std::string format_csv(const RunTrace& trace, const std::vector<EvalRecord>& records) {
  if (trace.steps.size() != records.size()) {
    throw InvalidArgument("trace and records differ in length");
  }
  std::string out = "iter,h_k,queries_cum,f_gap,v_f,dist\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EvalRecord& r = records[i];
    out += std::to_string(r.k);
    out += ',';
    out += format_double(trace.steps[i].h);
    out += ',';
    out += std::to_string(r.queries_cumulative);
    out += ',';
    out += format_double(r.f_gap);
    out += ',';
    out += format_double(r.v_f);
    out += ',';
    out += format_double(r.dist);
    out += '\n';
  }
  return out;
}

void write_csv(const RunTrace& trace, const std::vector<EvalRecord>& records,
               const std::string& path) {
  const std::string text = format_csv(trace, records);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

void print_report(std::ostream& out, const SummaryReport& r) {
  const ExperimentConfig& c = r.config;
  auto line = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto vec = [](const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += format_double(v[i]);
    }
    return s;
  };
  line("benchmark", c.benchmark);
  line("algorithm", std::string(to_string(c.algorithm)));
  line("dim", std::to_string(c.dim));
  line("D", format_double(c.distance_bound));
  if (c.smoothness) line("L", format_double(*c.smoothness));
  if (c.epsilon) line("epsilon", format_double(*c.epsilon));
  if (c.x1) line("x1", vec(*c.x1));
  line("seed", std::to_string(c.seed));
  line("status", r.failed ? "failed: " + r.failure : "ok");
  line("iterations", std::to_string(r.iterations));
  line("delta", format_double(r.delta));
  if (r.gamma) line("gamma", format_double(*r.gamma));
  line("best_v_f", format_double(r.best_v_f));
  line("best_iter", std::to_string(r.best_iter));
  line("total_queries", std::to_string(r.total_queries));
  line("bound", format_double(r.bound));
  line("bound_satisfied", r.bound_satisfied ? "true" : "false");
  const HypothesisReport& h = r.hypotheses;
  line("max_dist", format_double(h.max_dist));
  line("distance_hypothesis", h.distance_ok ? "held" : "violated");
  line("min_grad_norm", format_double(h.min_grad_norm));
  line("min_grad_norm_before_target", format_double(h.min_grad_norm_before_target));
  line("gradient_hypothesis", h.gradient_ok ? "held" : "violated");
  line("verdict", !h.conclusive()            ? "inconclusive"
                  : r.bound_satisfied         ? "bound-satisfied"
                                              : "bound-violated");
}

}  // namespace cmpopt
