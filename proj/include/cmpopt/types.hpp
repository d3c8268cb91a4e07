#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace cmpopt {

/// Dense point/direction type. Length is fixed per problem instance.
using Vector = Eigen::VectorXd;

/// Raised for malformed arguments: dimension mismatch, non-finite entries,
/// out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request names something the library does not provide
/// (unknown benchmark, missing analytic gradient, missing minimizer).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A collaborator broke its contract, e.g. a direction estimator returned a
/// vector that is not unit length.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool all_finite(const Vector& v);

void require_finite(const Vector& v, const std::string& what);

void require_dim(const Vector& v, Eigen::Index dim, const std::string& what);

/// Ceiling that treats values within a relative 1e-9 of an integer as that
/// integer, so that quantities like 18*3^2/0.3^2 land on 1800 and not 1801.
long long snapped_ceil(double value);

}  // namespace cmpopt
