#pragma once

#include "cmpopt/oracle.hpp"

#include <cstdint>
#include <vector>

namespace cmpopt {

/// Result of a directional preference test on <grad f(x), v>.
enum class DPAnswer {
  GeqMinusDelta,  ///< <grad f(x), v> >= -delta
  LeqDelta,       ///< <grad f(x), v> <=  delta
};

/// One comparison: f(x + (2 delta / L) v) against f(x). Sound whenever
/// `smoothness` is at least the true gradient Lipschitz constant. When
/// |<grad f(x), v>| <= delta both answers are true and either may come back.
///
/// Throws InvalidArgument if v is not unit length (1e-9) or if delta or
/// smoothness is not positive.
DPAnswer directional_preference(CountingOracle& oracle, double smoothness,
                                const Vector& x, const Vector& v, double delta);

/// Final binary-search bracket for one coordinate ratio.
struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

struct DirectionEstimate {
  Vector direction;               ///< unit l2 norm
  std::uint64_t queries_used = 0;
  std::vector<int> sign_pattern;  ///< s_i in {-1, +1} from the sign tests
  Eigen::Index pivot_index = 0;   ///< coordinate with the (approx.) largest |g_i|
  Vector ratios;                  ///< alpha_i, alpha_pivot = 1
  std::vector<Bracket> brackets;  ///< per coordinate; pivot keeps [1, 1]
  double precision = 0.0;         ///< the DP threshold used internally
};

/// DP threshold used by comparison_gde: delta * gamma / (4 n^{3/2}).
double gde_dp_threshold(Eigen::Index n, double delta, double gamma);

/// Number of bisection steps per non-pivot coordinate,
/// ceil(log2(4 n^{3/2} / delta) + 1). Equal to ceil(log2(gamma/threshold) + 1)
/// for any gamma.
int gde_bisection_steps(Eigen::Index n, double delta);

/// Exact oracle cost of one comparison_gde call:
/// n sign tests + (n - 1) tournament rounds + (n - 1) * bisection steps, or
/// 1 when n == 1.
std::uint64_t gde_query_budget(Eigen::Index n, double delta);

/// Estimate grad f(x) / |grad f(x)| from comparisons only.
///
/// 1. Sign test on each basis vector fixes s_i so that s_i g_i >= -threshold.
/// 2. A sequential tournament over the sign-adjusted coordinates picks a
///    pivot i* with approximately the largest s_i g_i.
/// 3. For every other coordinate, bisection on alpha in [0, 1] against
///    directions (alpha s_{i*} e_{i*} - s_i e_i) / sqrt(1 + alpha^2) brackets
///    the ratio s_i g_i / s_{i*} g_{i*}.
/// The result is (s * alpha) / |alpha|.
///
/// If |grad f(x)| >= gamma the output is within `delta` of the true
/// direction. The precondition is the caller's responsibility and is not
/// checked. Throws InvalidArgument for delta outside (0, 1] or gamma <= 0.
DirectionEstimate comparison_gde(CountingOracle& oracle, double smoothness,
                                 const Vector& x, double delta, double gamma);

}  // namespace cmpopt
