#pragma once

#include "cmpopt/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmpopt {

/// An evaluatable scalar field together with the metadata the verification
/// code needs: smoothness constant, analytic gradient and known minimizer.
///
/// Objectives are immutable after construction and safe to share between
/// threads. The algorithms only ever see an Objective through a
/// CountingOracle; the gradient and minimizer are for checking results.
class Objective {
 public:
  using EvalFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;

  Objective(std::string name, Eigen::Index dim, double smoothness, EvalFn eval,
            std::optional<GradFn> grad = std::nullopt,
            std::optional<Vector> minimizer = std::nullopt);

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }
  double smoothness() const { return smoothness_; }

  double operator()(const Vector& x) const;

  bool has_gradient() const { return grad_.has_value(); }
  /// Throws Unsupported when no analytic gradient was supplied.
  Vector gradient(const Vector& x) const;

  const std::optional<Vector>& minimizer() const { return minimizer_; }
  /// f(x*); throws Unsupported when the minimizer is unknown.
  double optimal_value() const;

 private:
  std::string name_;
  Eigen::Index dim_;
  double smoothness_;
  EvalFn eval_;
  std::optional<GradFn> grad_;
  std::optional<Vector> minimizer_;
};

/// Parameters accepted by make_benchmark. Empty vectors take defaults:
/// center = 0, spectrum = all ones.
struct BenchmarkParams {
  Vector center;
  Vector spectrum;
};

/// Safety factor applied to numerically certified smoothness constants.
inline constexpr double kSmoothnessSafetyFactor = 1.1;

const std::vector<std::string>& benchmark_names();

/// Instantiate a registered benchmark:
///
///   quadratic      f(x) = 1/2 sum_i a_i (x_i - c_i)^2,   L = max a_i
///   log_quadratic  f(x) = log(1 + |x - c|^2)
///   exp_bump       f(x) = 1 - exp(-|x - c|^2)
///
/// All three are smooth, quasi-convex and have gradients that vanish only
/// at c. For the two radial ones L is certified numerically and stored
/// multiplied by kSmoothnessSafetyFactor.
///
/// Throws Unsupported for an unknown name and InvalidArgument for a
/// non-positive spectrum or mismatched parameter lengths.
Objective make_benchmark(std::string_view name, Eigen::Index dim,
                         const BenchmarkParams& params = {});

/// Numerical Lipschitz estimate for the gradient: the maximum of
/// |grad(x) - grad(y)| / |x - y| over random pairs near the minimizer (or
/// the origin), combined with a finite-difference Hessian sweep along a
/// ray. Returns an estimate from below of the true constant.
double certify_smoothness(const Objective& objective, std::uint64_t seed = 7,
                          int samples = 4000, double radius = 5.0);

}  // namespace cmpopt
