#include "cmpopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmpopt {

double v_f(const Vector& grad_x, const Vector& x, const Vector& y) {
  if (grad_x.size() != x.size() || x.size() != y.size()) {
    throw InvalidArgument("v_f arguments must share one dimension");
  }
  const double norm = grad_x.norm();
  if (norm <= kZeroGradientThreshold) return 0.0;
  return (grad_x / norm).dot(x - y);
}

double ngd_error_bound(double distance_bound, long long iterations, double delta) {
  if (!(distance_bound > 0)) throw InvalidArgument("distance bound D must be positive");
  if (iterations < 1) throw InvalidArgument("iteration count N must be >= 1");
  if (!(delta >= 0) || !std::isfinite(delta)) {
    throw InvalidArgument("delta must be non-negative");
  }
  return 3.0 * distance_bound / std::sqrt(2.0 * static_cast<double>(iterations)) +
         delta * distance_bound;
}

namespace {

const Vector& require_minimizer(const Objective& objective) {
  if (!objective.minimizer()) {
    throw Unsupported("objective '" + objective.name() + "' has no known minimizer");
  }
  return *objective.minimizer();
}

}  // namespace

std::vector<EvalRecord> evaluate_trace(const RunTrace& trace,
                                       const Objective& objective) {
  const Vector& x_star = require_minimizer(objective);
  const double f_star = objective.optimal_value();
  std::vector<EvalRecord> records;
  records.reserve(trace.steps.size());
  for (const TraceStep& step : trace.steps) {
    EvalRecord r;
    r.k = step.k;
    r.v_f = v_f(objective.gradient(step.x), step.x, x_star);
    r.f_gap = objective(step.x) - f_star;
    r.dist = (step.x - x_star).norm();
    r.queries_cumulative = step.queries_cumulative;
    records.push_back(r);
  }
  return records;
}

TerminalSummary summarize(const RunTrace& trace, const Objective& objective) {
  TerminalSummary out;
  out.total_queries = trace.total_queries();
  if (trace.steps.empty()) return out;

  if (!objective.minimizer() || !objective.has_gradient()) {
    out.label = TerminalSummary::Label::LastIterate;
    out.best_iter = trace.steps.back().k;
    out.best_point = trace.steps.back().x;
    return out;
  }

  out.label = TerminalSummary::Label::ArgminVf;
  const auto records = evaluate_trace(trace, objective);
  const auto best = std::min_element(
      records.begin(), records.end(),
      [](const EvalRecord& a, const EvalRecord& b) { return a.v_f < b.v_f; });
  const auto idx = static_cast<std::size_t>(best - records.begin());
  out.best_v_f = best->v_f;
  out.best_iter = best->k;
  out.best_point = trace.steps[idx].x;
  return out;
}

HypothesisReport check_hypotheses(const RunTrace& trace,
                                  const Objective& objective,
                                  double distance_bound,
                                  std::optional<double> gamma,
                                  std::optional<double> target) {
  const Vector& x_star = require_minimizer(objective);
  HypothesisReport rep;
  rep.distance_bound = distance_bound;
  rep.gamma = gamma;

  double max_dist = 0;
  double min_grad = std::numeric_limits<double>::infinity();
  double min_grad_prefix = std::numeric_limits<double>::infinity();
  bool reached = false;
  for (const TraceStep& step : trace.steps) {
    max_dist = std::max(max_dist, (step.x - x_star).norm());
    const Vector g = objective.gradient(step.x);
    const double gn = g.norm();
    min_grad = std::min(min_grad, gn);
    // The iterate that first meets the target already settles the minimum,
    // so direction accuracy there is irrelevant.
    if (!reached && target && v_f(g, step.x, x_star) <= *target) reached = true;
    if (!reached) min_grad_prefix = std::min(min_grad_prefix, gn);
  }
  if (trace.final_point.size() == x_star.size()) {
    max_dist = std::max(max_dist, (trace.final_point - x_star).norm());
  }

  rep.max_dist = max_dist;
  rep.distance_ok = max_dist <= distance_bound;
  rep.min_grad_norm = min_grad;
  rep.min_grad_norm_before_target = min_grad_prefix;
  rep.gradient_ok = !gamma || min_grad_prefix >= *gamma;
  return rep;
}

}  // namespace cmpopt
