#include "cmpopt/objective.hpp"

#include <cmath>
#include <initializer_list>
#include <random>
#include <utility>

namespace cmpopt {

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, const std::string& what) {
  if (!v.allFinite()) throw InvalidArgument(what + " has non-finite entries");
}

void require_dim(const Vector& v, Eigen::Index dim, const std::string& what) {
  if (v.size() != dim) {
    throw InvalidArgument(what + " has dimension " + std::to_string(v.size()) +
                          ", expected " + std::to_string(dim));
  }
}

long long snapped_ceil(double value) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::ceil(value));
}

Objective::Objective(std::string name, Eigen::Index dim, double smoothness,
                     EvalFn eval, std::optional<GradFn> grad,
                     std::optional<Vector> minimizer)
    : name_(std::move(name)),
      dim_(dim),
      smoothness_(smoothness),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      minimizer_(std::move(minimizer)) {
  if (dim_ < 1) throw InvalidArgument("objective dimension must be >= 1");
  if (!(smoothness_ > 0) || !std::isfinite(smoothness_)) {
    throw InvalidArgument("smoothness constant must be positive and finite");
  }
  if (!eval_) throw InvalidArgument("objective needs an evaluation function");
  if (minimizer_) {
    require_dim(*minimizer_, dim_, "minimizer");
    require_finite(*minimizer_, "minimizer");
  }
}

double Objective::operator()(const Vector& x) const { return eval_(x); }

Vector Objective::gradient(const Vector& x) const {
  if (!grad_) throw Unsupported("objective '" + name_ + "' has no analytic gradient");
  return (*grad_)(x);
}

double Objective::optimal_value() const {
  if (!minimizer_) throw Unsupported("objective '" + name_ + "' has no known minimizer");
  return eval_(*minimizer_);
}

namespace {

Objective quadratic(Eigen::Index dim, Vector center, Vector spectrum) {
  const double smoothness = spectrum.maxCoeff();
  auto eval = [center, spectrum](const Vector& x) {
    const Vector d = x - center;
    return 0.5 * spectrum.dot(d.cwiseProduct(d));
  };
  auto grad = [center, spectrum](const Vector& x) -> Vector {
    return spectrum.cwiseProduct(x - center);
  };
  return Objective("quadratic", dim, smoothness, eval, grad, center);
}

// Radial objectives f(x) = phi(|x - c|^2). Their smoothness constant is set
// from a numerical certificate after construction.
Objective log_quadratic(Eigen::Index dim, Vector center, double smoothness) {
  auto eval = [center](const Vector& x) {
    return std::log1p((x - center).squaredNorm());
  };
  auto grad = [center](const Vector& x) -> Vector {
    const Vector d = x - center;
    return (2.0 / (1.0 + d.squaredNorm())) * d;
  };
  return Objective("log_quadratic", dim, smoothness, eval, grad, center);
}

Objective exp_bump(Eigen::Index dim, Vector center, double smoothness) {
  auto eval = [center](const Vector& x) {
    return -std::expm1(-(x - center).squaredNorm());
  };
  auto grad = [center](const Vector& x) -> Vector {
    const Vector d = x - center;
    return (2.0 * std::exp(-d.squaredNorm())) * d;
  };
  return Objective("exp_bump", dim, smoothness, eval, grad, center);
}

template <typename Build>
Objective certified(Build build) {
  // Provisional constant only used to construct the object being certified.
  const Objective provisional = build(1.0);
  return build(kSmoothnessSafetyFactor * certify_smoothness(provisional));
}

}  // namespace

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"quadratic", "log_quadratic",
                                                 "exp_bump"};
  return names;
}

Objective make_benchmark(std::string_view name, Eigen::Index dim,
                         const BenchmarkParams& params) {
  if (dim < 1) throw InvalidArgument("benchmark dimension must be >= 1");

  Vector center = params.center.size() == 0 ? Vector(Vector::Zero(dim)) : params.center;
  require_dim(center, dim, "center");
  require_finite(center, "center");

  if (name == "quadratic") {
    Vector spectrum =
        params.spectrum.size() == 0 ? Vector(Vector::Ones(dim)) : params.spectrum;
    require_dim(spectrum, dim, "spectrum");
    require_finite(spectrum, "spectrum");
    if (spectrum.minCoeff() <= 0) {
      throw InvalidArgument("quadratic spectrum must be strictly positive");
    }
    return quadratic(dim, std::move(center), std::move(spectrum));
  }
  if (params.spectrum.size() != 0) {
    throw InvalidArgument("spectrum is only meaningful for the quadratic benchmark");
  }
  if (name == "log_quadratic") {
    return certified([&](double l) { return log_quadratic(dim, center, l); });
  }
  if (name == "exp_bump") {
    return certified([&](double l) { return exp_bump(dim, center, l); });
  }
  throw Unsupported("unsupported benchmark '" + std::string(name) + "'");
}

double certify_smoothness(const Objective& objective, std::uint64_t seed,
                          int samples, double radius) {
  const Eigen::Index n = objective.dim();
  const Vector origin = objective.minimizer().value_or(Vector(Vector::Zero(n)));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;

  auto random_unit = [&] {
    Vector u(n);
    do {
      for (Eigen::Index i = 0; i < n; ++i) u[i] = gauss(rng);
    } while (u.norm() == 0);
    return Vector(u / u.norm());
  };

  double best = 0;

  for (int s = 0; s < samples; ++s) {
    const Vector x = origin + radius * unit(rng) * random_unit();
    // Pair separations span several scales so both local curvature and
    // chord slopes are covered.
    const double sep = std::pow(10.0, -3.0 + 3.0 * unit(rng));
    const Vector y = x + sep * random_unit();
    const double diff = (objective.gradient(x) - objective.gradient(y)).norm();
    best = std::max(best, diff / (x - y).norm());
  }

  // Hessian sweep along a ray: central differences of the gradient along the
  // ray direction and along an orthogonal one.
  const Vector u = random_unit();
  Vector w = random_unit();
  if (n > 1) {
    w -= w.dot(u) * u;
    if (w.norm() > 1e-8) w.normalize();
  }
  constexpr int kSweep = 2001;
  constexpr double kH = 1e-5;
  for (int i = 0; i < kSweep; ++i) {
    const Vector x = origin + (radius * i / (kSweep - 1)) * u;
    for (const Vector* dir : std::initializer_list<const Vector*>{&u, &w}) {
      const Vector dg = objective.gradient(x + kH * *dir) - objective.gradient(x - kH * *dir);
      best = std::max(best, dg.norm() / (2 * kH));
    }
  }
  return best;
}

}  // namespace cmpopt
