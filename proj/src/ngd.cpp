#include "cmpopt/ngd.hpp"

#include <cmath>
#include <string>

namespace cmpopt {

namespace {
constexpr double kUnitTolerance = 1e-9;
}

double step_size(long long k, double distance_bound) {
  if (k < 1) throw InvalidArgument("iteration index must be >= 1");
  if (!(distance_bound > 0)) throw InvalidArgument("distance bound D must be positive");
  return distance_bound / std::sqrt(2.0 * static_cast<double>(k));
}

RunTrace approx_adaptive_ngd(const DirectionEstimator& estimator,
                             const Vector& x1, double distance_bound,
                             long long iterations) {
  if (iterations < 1) throw InvalidArgument("iteration count N must be >= 1");
  if (!(distance_bound > 0)) throw InvalidArgument("distance bound D must be positive");
  require_finite(x1, "x1");

  RunTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(iterations));
  Vector x = x1;
  std::uint64_t queries = 0;

  for (long long k = 1; k <= iterations; ++k) {
    const DirectionEstimate est = estimator(x);
    if (est.direction.size() != x.size() ||
        std::abs(est.direction.norm() - 1.0) > kUnitTolerance) {
      throw ContractViolation("direction estimator returned a non-unit vector at k = " +
                              std::to_string(k));
    }
    queries += est.queries_used;
    const double h = step_size(k, distance_bound);
    trace.steps.push_back(TraceStep{k, x, h, queries});

    Vector next = x - h * est.direction;
    if (!next.allFinite()) {
      trace.final_point = x;
      throw NumericalFailure("non-finite iterate at k = " + std::to_string(k + 1),
                             std::move(trace));
    }
    x = std::move(next);
  }
  trace.final_point = std::move(x);
  return trace;
}

AdaNgdSchedule adangd_schedule(double distance_bound, double epsilon) {
  if (!(distance_bound > 0)) throw InvalidArgument("distance bound D must be positive");
  if (!(epsilon > 0)) throw InvalidArgument("target epsilon must be positive");
  if (epsilon > 2.0 * distance_bound) {
    throw InvalidArgument("epsilon must not exceed 2D (delta = eps/(2D) would exceed 1)");
  }
  AdaNgdSchedule s;
  s.iterations = snapped_ceil(18.0 * distance_bound * distance_bound / (epsilon * epsilon));
  s.delta = epsilon / (2.0 * distance_bound);
  s.gamma = epsilon;
  return s;
}

RunTrace comparison_adangd(CountingOracle& oracle, double smoothness,
                           const Vector& x1, double distance_bound,
                           double epsilon) {
  const AdaNgdSchedule s = adangd_schedule(distance_bound, epsilon);
  require_dim(x1, oracle.dim(), "x1");
  return approx_adaptive_ngd(gde_direction_estimator(oracle, smoothness, s.delta, s.gamma),
                             x1, distance_bound, s.iterations);
}

DirectionEstimator exact_direction_estimator(const Objective& objective) {
  if (!objective.has_gradient()) {
    throw Unsupported("exact direction estimator needs an analytic gradient");
  }
  return [objective](const Vector& x) {
    const Vector g = objective.gradient(x);
    DirectionEstimate est;
    const double norm = g.norm();
    if (norm == 0.0) {
      est.direction = Vector::Zero(x.size());
      est.direction[0] = 1.0;
    } else {
      est.direction = g / norm;
    }
    return est;
  };
}

DirectionEstimator gde_direction_estimator(CountingOracle& oracle,
                                           double smoothness, double delta,
                                           double gamma) {
  return [&oracle, smoothness, delta, gamma](const Vector& x) {
    return comparison_gde(oracle, smoothness, x, delta, gamma);
  };
}

}  // namespace cmpopt
