#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "cfslv/lattice.hpp"

namespace cfslv {

struct OracleOptions {
  /// Limit on the estimated number of lattice points searched.
  std::uint64_t budget = 1'000'000'000;
  /// Also prune on the partial Cholesky sum of aᵀGa against the incumbent.
  /// When false only the prefix norm is used.
  bool gram_pruning = true;
};

/// Exhaustive minimizer of aᵀGa over nonzero integer a with ‖a‖ ≤ radius.
SolverResult brute_force_slv(const GramMatrix& g, double radius, const OracleOptions& options = {});

/// Visits every nonzero integer vector of length n with ‖a‖ ≤ radius whose
/// first nonzero entry is positive.
void enumerate_ball(std::size_t n, double radius,
                    const std::function<void(std::span<const Integer>)>& visit);

}  // namespace cfslv
