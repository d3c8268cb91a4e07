#pragma once

#include "cmpopt/ngd.hpp"
#include "cmpopt/objective.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmpopt {

/// Gradients with l2 norm at or below this count as zero in v_f.
inline constexpr double kZeroGradientThreshold = 1e-15;

/// v_f(x, y) = <grad / |grad|, x - y>, or 0 when the gradient vanishes.
///
/// For quasi-convex f, small v_f(x, x*) bounds f(x) - f* through the growth
/// function omega(tau) = max{ f(z) - f* : |z - x*| <= tau }, namely
/// f(x) - f* <= omega(v_f(x, x*)). omega is not computed here.
double v_f(const Vector& grad_x, const Vector& x, const Vector& y);

/// 3D / sqrt(2N) + delta * D.
double ngd_error_bound(double distance_bound, long long iterations, double delta);

struct EvalRecord {
  long long k = 0;
  double v_f = 0;
  double f_gap = 0;
  double dist = 0;
  std::uint64_t queries_cumulative = 0;
};

/// One record per trace step. Requires a minimizer and an analytic gradient
/// (Unsupported otherwise).
std::vector<EvalRecord> evaluate_trace(const RunTrace& trace,
                                       const Objective& objective);

struct TerminalSummary {
  enum class Label { ArgminVf, LastIterate };

  Label label = Label::LastIterate;
  std::optional<double> best_v_f;  ///< unset without a minimizer
  long long best_iter = 0;
  Vector best_point;
  std::uint64_t total_queries = 0;
};

/// Best iterate by v_f when x* is known, otherwise the last iterate.
TerminalSummary summarize(const RunTrace& trace, const Objective& objective);

struct HypothesisReport {
  double distance_bound = 0;
  double max_dist = 0;        ///< over x_1..x_{N+1}
  bool distance_ok = false;

  std::optional<double> gamma;
  double min_grad_norm = 0;   ///< over x_1..x_N
  /// Over the iterates strictly before the first one with v_f <= target
  /// (+inf if that is x_1); equals min_grad_norm when no target is set or it
  /// is never reached.
  double min_grad_norm_before_target = 0;
  bool gradient_ok = true;    ///< trivially true without gamma

  /// Both hypotheses held; a bound violation would then be a real failure.
  bool conclusive() const { return distance_ok && gradient_ok; }
};

/// Post-hoc check of the descent hypotheses: all points within D of x*, and
/// (if gamma is given) gradient norms at least gamma on the iterates visited
/// before v_f <= target. Never modifies the trace. Throws Unsupported
/// without a minimizer.
HypothesisReport check_hypotheses(const RunTrace& trace,
                                  const Objective& objective,
                                  double distance_bound,
                                  std::optional<double> gamma = std::nullopt,
                                  std::optional<double> target = std::nullopt);

}  // namespace cmpopt
