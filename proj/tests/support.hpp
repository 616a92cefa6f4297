#pragma once

// Reference helpers for the test suites. Nothing here calls into the solvers
// or the oracle; the point is to have a second, naive implementation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cfslv/lattice.hpp"

namespace cfslv::testing {

inline double naive_form(const Matrix& g, const std::vector<Integer>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<double>(a[i]) * g(i, j) * static_cast<double>(a[j]);
  return s;
}

// Plain odometer over the box [-r, r]^n, no pruning at all.
inline double naive_min(const Matrix& g, Integer r) {
  const std::size_t n = g.rows();
  std::vector<Integer> a(n, -r);
  double best = INFINITY;
  while (true) {
    bool zero = true;
    for (Integer x : a) zero = zero && x == 0;
    if (!zero) best = std::min(best, naive_form(g, a));
    std::size_t pos = 0;
    while (pos < n && ++a[pos] > r) a[pos++] = -r;
    if (pos == n) break;
  }
  return best;
}

inline std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline bool is_unit(std::span<const Integer> a) {
  std::size_t nonzero = 0;
  for (Integer x : a) {
    if (x != 0) ++nonzero;
    if (x > 1 || x < -1) return false;
  }
  return nonzero == 1;
}

inline double norm(std::span<const Integer> a) {
  double s = 0.0;
  for (Integer x : a) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

// Nonempty intersection of the open intervals {x : a_i - 1/2 < h_i x < a_i + 1/2}.
inline bool interval_feasible(std::span<const double> h, std::span<const Integer> a) {
  double lo = -INFINITY;
  double hi = INFINITY;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double left = static_cast<double>(a[i]) - 0.5;
    const double right = static_cast<double>(a[i]) + 0.5;
    if (h[i] == 0.0) {
      if (!(left < 0.0 && 0.0 < right)) return false;
      continue;
    }
    double u = left / h[i];
    double v = right / h[i];
    if (u > v) std::swap(u, v);
    lo = std::max(lo, u);
    hi = std::min(hi, v);
  }
  return lo < hi;
}

inline bool relative_equal(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace cfslv::testing
