#include "cmpopt/oracle.hpp"

#include <utility>

namespace cmpopt {

CountingOracle::CountingOracle(Objective objective, Sign tie_value)
    : objective_(std::move(objective)), tie_value_(tie_value) {}

Sign CountingOracle::compare(const Vector& x, const Vector& y) {
  require_dim(x, objective_.dim(), "x");
  require_dim(y, objective_.dim(), "y");
  require_finite(x, "x");
  require_finite(y, "y");

  const double fx = objective_(x);
  const double fy = objective_(y);
  ++queries_;
  // Exact comparison, no tolerance band.
  if (fx > fy) return Sign::Positive;
  if (fx < fy) return Sign::Negative;
  return tie_value_;
}

}  // namespace cmpopt
