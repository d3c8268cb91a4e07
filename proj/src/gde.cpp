#include "cmpopt/gde.hpp"

#include <cmath>
#include <string>

namespace cmpopt {

namespace {

constexpr double kUnitTolerance = 1e-9;

void require_precision(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidArgument("precision delta must lie in (0, 1], got " +
                          std::to_string(delta));
  }
}

Vector basis(Eigen::Index n, Eigen::Index i, double scale = 1.0) {
  Vector e = Vector::Zero(n);
  e[i] = scale;
  return e;
}

}  // namespace

DPAnswer directional_preference(CountingOracle& oracle, double smoothness,
                                const Vector& x, const Vector& v, double delta) {
  if (!(delta > 0)) throw InvalidArgument("DP threshold must be positive");
  if (!(smoothness > 0)) throw InvalidArgument("smoothness constant must be positive");
  require_dim(v, oracle.dim(), "v");
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InvalidArgument("DP direction must be a unit vector");
  }
  const Vector probe = x + (2.0 * delta / smoothness) * v;
  return oracle.compare(probe, x) == Sign::Positive ? DPAnswer::GeqMinusDelta
                                                    : DPAnswer::LeqDelta;
}

double gde_dp_threshold(Eigen::Index n, double delta, double gamma) {
  return delta * gamma / (4.0 * std::pow(static_cast<double>(n), 1.5));
}

int gde_bisection_steps(Eigen::Index n, double delta) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  require_precision(delta);
  // gamma / threshold = 4 n^{3/2} / delta, independent of gamma.
  const double ratio = 4.0 * std::pow(static_cast<double>(n), 1.5) / delta;
  return static_cast<int>(snapped_ceil(std::log2(ratio) + 1.0));
}

std::uint64_t gde_query_budget(Eigen::Index n, double delta) {
  const auto steps = static_cast<std::uint64_t>(gde_bisection_steps(n, delta));
  if (n == 1) return 1;
  const auto m = static_cast<std::uint64_t>(n);
  return m + (m - 1) + (m - 1) * steps;
}

DirectionEstimate comparison_gde(CountingOracle& oracle, double smoothness,
                                 const Vector& x, double delta, double gamma) {
  require_precision(delta);
  if (!(gamma > 0)) throw InvalidArgument("gradient lower bound gamma must be positive");
  if (!(smoothness > 0)) throw InvalidArgument("smoothness constant must be positive");
  const Eigen::Index n = oracle.dim();
  require_dim(x, n, "x");
  require_finite(x, "x");

  const std::uint64_t start = oracle.query_count();
  const double threshold = gde_dp_threshold(n, delta, gamma);
  auto dp = [&](const Vector& v) {
    return directional_preference(oracle, smoothness, x, v, threshold);
  };

  DirectionEstimate est;
  est.precision = threshold;

  // Signs: afterwards s_i g_i >= -threshold for every i.
  est.sign_pattern.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    est.sign_pattern[i] = dp(basis(n, i)) == DPAnswer::GeqMinusDelta ? 1 : -1;
  }
  const auto& s = est.sign_pattern;

  if (n == 1) {
    est.direction = basis(1, 0, s[0]);
    est.ratios = Vector::Ones(1);
    est.brackets = {Bracket{1.0, 1.0}};
    est.pivot_index = 0;
    est.queries_used = oracle.query_count() - start;
    return est;
  }

  // Sequential tournament for the largest sign-adjusted coordinate.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Index pivot = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    Vector v = basis(n, pivot, s[pivot] * inv_sqrt2);
    v[j] = -s[j] * inv_sqrt2;
    // GeqMinusDelta: g_pivot >= g_j - sqrt(2) threshold, keep the champion.
    if (dp(v) == DPAnswer::LeqDelta) pivot = j;
  }
  est.pivot_index = pivot;

  // Bisection on alpha_i ~ g_i / g_pivot (sign-adjusted) over [0, 1].
  const int steps = gde_bisection_steps(n, delta);
  est.ratios = Vector::Ones(n);
  est.brackets.assign(static_cast<std::size_t>(n), Bracket{1.0, 1.0});
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == pivot) continue;
    Bracket b{0.0, 1.0};
    for (int step = 0; step < steps; ++step) {
      const double alpha = 0.5 * (b.lo + b.hi);
      Vector v = Vector::Zero(n);
      v[pivot] = alpha * s[pivot];
      v[i] = -s[i];
      v /= std::sqrt(1.0 + alpha * alpha);
      // <g, v> >= -threshold  =>  alpha g_pivot - g_i >= -sqrt(2) threshold,
      // i.e. alpha is (nearly) at or above the ratio.
      if (dp(v) == DPAnswer::GeqMinusDelta) {
        b.hi = alpha;
      } else {
        b.lo = alpha;
      }
    }
    est.brackets[i] = b;
    est.ratios[i] = 0.5 * (b.lo + b.hi);
  }

  Vector signed_ratios(n);
  for (Eigen::Index i = 0; i < n; ++i) signed_ratios[i] = s[i] * est.ratios[i];
  est.direction = signed_ratios / est.ratios.norm();
  est.queries_used = oracle.query_count() - start;
  return est;
}

}  // namespace cmpopt
