#pragma once

#include "cmpopt/objective.hpp"

#include <cstdint>

namespace cmpopt {

enum class Sign : int { Negative = -1, Positive = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }

/// Two-point comparison oracle with an exact query ledger.
///
/// compare(x, y) answers +1 when f(x) >= f(y) and -1 when f(x) <= f(y). On
/// an exact tie the configured tie value is returned. Function values are
/// never exposed.
///
/// Not thread-safe: give each worker its own oracle.
class CountingOracle {
 public:
  explicit CountingOracle(Objective objective, Sign tie_value = Sign::Positive);

  Sign compare(const Vector& x, const Vector& y);

  std::uint64_t query_count() const { return queries_; }
  void reset() { queries_ = 0; }

  Eigen::Index dim() const { return objective_.dim(); }
  Sign tie_value() const { return tie_value_; }

  /// Verification access only. Algorithms must not call this.
  const Objective& objective() const { return objective_; }

 private:
  Objective objective_;
  Sign tie_value_;
  std::uint64_t queries_ = 0;
};

}  // namespace cmpopt
