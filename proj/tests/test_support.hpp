#pragma once

#include "cmpopt/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace cmpopt::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Vector gaussian(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss_(engine_);
    return v;
  }
  Vector unit(Eigen::Index n) {
    Vector v;
    do {
      v = gaussian(n);
    } while (v.norm() == 0);
    return v / v.norm();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_;
};

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace cmpopt::testing
