#pragma once

#include "cmpopt/gde.hpp"
#include "cmpopt/objective.hpp"
#include "cmpopt/oracle.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cmpopt {

/// Maps a point to an estimated unit gradient direction.
using DirectionEstimator = std::function<DirectionEstimate(const Vector&)>;

struct TraceStep {
  long long k = 0;
  Vector x;      ///< x_k
  double h = 0;  ///< step taken from x_k
  std::uint64_t queries_cumulative = 0;  ///< after estimating at x_k
};

/// The iterates x_1..x_N together with the successor x_{N+1}.
struct RunTrace {
  std::vector<TraceStep> steps;
  Vector final_point;

  std::uint64_t total_queries() const {
    return steps.empty() ? 0 : steps.back().queries_cumulative;
  }
};

/// An iterate became non-finite. Carries the trace up to the failure.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, RunTrace partial)
      : std::runtime_error(what), trace_(std::move(partial)) {}
  const RunTrace& trace() const { return trace_; }

 private:
  RunTrace trace_;
};

/// h_k = D / sqrt(2k).
double step_size(long long k, double distance_bound);

/// Normalized descent with the adaptive schedule h_k = D / sqrt(2k) and an
/// arbitrary direction estimator, for exactly `iterations` steps.
///
/// Throws ContractViolation if the estimator returns a non-unit vector and
/// NumericalFailure (with the partial trace) if an iterate is non-finite.
RunTrace approx_adaptive_ngd(const DirectionEstimator& estimator,
                             const Vector& x1, double distance_bound,
                             long long iterations);

/// Parameters derived from (D, epsilon) for comparison_adangd.
struct AdaNgdSchedule {
  long long iterations = 0;  ///< ceil(18 D^2 / eps^2)
  double delta = 0;          ///< eps / (2D)
  double gamma = 0;          ///< eps
};

/// Throws InvalidArgument unless 0 < epsilon <= 2D.
AdaNgdSchedule adangd_schedule(double distance_bound, double epsilon);

/// Comparison-only normalized descent: each step estimates the direction
/// with comparison_gde(delta = eps/(2D), gamma = eps) and moves by
/// h_k = D / sqrt(2k). Always runs the full schedule; there is no online
/// stopping rule since the accuracy measure needs x*.
RunTrace comparison_adangd(CountingOracle& oracle, double smoothness,
                           const Vector& x1, double distance_bound,
                           double epsilon);

/// Baseline estimator returning grad f(x) / |grad f(x)|, or e_1 when the
/// gradient is exactly zero. Throws Unsupported without an analytic gradient.
DirectionEstimator exact_direction_estimator(const Objective& objective);

/// Estimator backed by comparison_gde with fixed (delta, gamma).
DirectionEstimator gde_direction_estimator(CountingOracle& oracle,
                                           double smoothness, double delta,
                                           double gamma);

}  // namespace cmpopt
