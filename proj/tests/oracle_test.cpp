#include "cmpopt/gde.hpp"
#include "cmpopt/oracle.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <limits>

namespace cmpopt {
namespace {

using testing::Rng;
using testing::vec;

Objective squared_norm(Eigen::Index n) {
  return Objective("squared_norm", n, 2.0, [](const Vector& x) { return x.squaredNorm(); },
                   [](const Vector& x) -> Vector { return 2.0 * x; }, Vector(Vector::Zero(n)));
}

TEST(CountingOracle, CompareExamples) {
  CountingOracle oracle(squared_norm(2));
  EXPECT_EQ(oracle.compare(vec({2, 0}), vec({1, 0})), Sign::Positive);
  EXPECT_EQ(oracle.compare(vec({0, 1}), vec({0, 1})), Sign::Positive);
  EXPECT_EQ(oracle.compare(vec({0, 0}), vec({3, 4})), Sign::Negative);
  EXPECT_EQ(oracle.query_count(), 3u);
}

TEST(CountingOracle, TieValueIsConfigurable) {
  CountingOracle oracle(squared_norm(2), Sign::Negative);
  EXPECT_EQ(oracle.compare(vec({0, 1}), vec({1, 0})), Sign::Negative);
  EXPECT_EQ(oracle.compare(vec({2, 0}), vec({1, 0})), Sign::Positive);
  EXPECT_EQ(oracle.tie_value(), Sign::Negative);
}

TEST(CountingOracle, LedgerCountsEveryCompare) {
  CountingOracle oracle(squared_norm(3));
  EXPECT_EQ(oracle.query_count(), 0u);
  Rng rng(11);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    oracle.compare(rng.gaussian(3), rng.gaussian(3));
    EXPECT_EQ(oracle.query_count(), i);
  }
  oracle.reset();
  EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(CountingOracle, LedgerAfterOneDirectionEstimate) {
  CountingOracle oracle(make_benchmark("quadratic", 2));
  comparison_gde(oracle, 1.0, vec({0.3, -2.0}), 0.1, 1.0);
  EXPECT_EQ(oracle.query_count(), 11u);
}

TEST(CountingOracle, RejectsBadInputsWithoutCounting) {
  CountingOracle oracle(squared_norm(2));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(oracle.compare(vec({1, 2, 3}), vec({1, 2})), InvalidArgument);
  EXPECT_THROW(oracle.compare(vec({1, 2}), vec({1})), InvalidArgument);
  EXPECT_THROW(oracle.compare(vec({nan, 0}), vec({1, 2})), InvalidArgument);
  EXPECT_THROW(oracle.compare(vec({0, 0}), vec({1, inf})), InvalidArgument);
  EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(CountingOracleProperty, AntisymmetricAwayFromTies) {
  Rng rng(12);
  for (const auto& name : benchmark_names()) {
    CountingOracle oracle(make_benchmark(name, 4));
    for (int t = 0; t < 2000; ++t) {
      const Vector x = 2.0 * rng.gaussian(4);
      const Vector y = 2.0 * rng.gaussian(4);
      if (oracle.objective()(x) == oracle.objective()(y)) continue;
      EXPECT_EQ(to_int(oracle.compare(x, y)), -to_int(oracle.compare(y, x)));
    }
  }
}

TEST(CountingOracleProperty, AgreesWithFunctionValues) {
  Rng rng(13);
  CountingOracle oracle(make_benchmark("exp_bump", 3));
  const Objective& f = oracle.objective();
  for (int t = 0; t < 2000; ++t) {
    const Vector x = rng.gaussian(3);
    const Vector y = rng.gaussian(3);
    const Sign s = oracle.compare(x, y);
    if (s == Sign::Positive) {
      EXPECT_GE(f(x), f(y));
    } else {
      EXPECT_LE(f(x), f(y));
    }
  }
}

}  // namespace
}  // namespace cmpopt
