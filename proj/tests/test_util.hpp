#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hkr/core.hpp"

namespace hkr::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline State random_state(int m, double lo, double hi) {
  State s;
  for (int k = 0; k < m; ++k) s[k] = uniform(lo, hi);
  return s;
}

inline double max_diff(const State& a, const State& b, int m) {
  double d = 0.0;
  for (int k = 0; k < m; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

inline double max_diff(const std::vector<State>& a, const std::vector<State>& b, int m) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, max_diff(a[i], b[i], m));
  return d;
}

// Composite trapezoid average of f over [lo, hi] with n panels.
template <class F>
State trapezoid_average(const F& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  State s = 0.5 * (f(lo) + f(hi));
  for (int j = 1; j < n; ++j) s += f(lo + j * h);
  return s * (h / (hi - lo));
}

}  // namespace hkr::test
