#pragma once

#include <cstdint>
#include <vector>

#include "cfslv/lattice.hpp"

namespace cfslv {

/// Sorted, deduplicated values of x at which some coordinate of ⌈hx⌋ jumps.
struct BreakpointSet {
  std::vector<double> points;
};

struct SingleSolverOptions {
  /// Upper limit on n(2⌈ψ⌉+2), the breakpoint count bound.
  std::uint64_t breakpoint_budget = 10'000'000;
};

/// Union over j with h_j ≠ 0 of c/|h_j| for half-integers |c| ≤ ⌈ψ⌉+½.
/// Values within 1e-12·max(1,|x|) of each other are merged.
BreakpointSet breakpoints(const ChannelVector& h, double psi);

/// Exact minimizer of aᵀGa over ℤⁿ\{0} for G = (1+P‖h‖²)I − P hhᵀ.
///
/// Starts from the best unit vector, then walks the sorted breakpoints and
/// rounds hx at every midpoint between consecutive breakpoints. A candidate
/// replaces the incumbent only on strict improvement, so a unit vector wins
/// ties. a_star is returned in canonical sign.
SolverResult solve_single(const ChannelVector& h, double power,
                          const SingleSolverOptions& options = {});

/// Breakpoint-count bound n(2⌈ψ⌉+2).
std::uint64_t breakpoint_bound(std::size_t n, double psi);

}  // namespace cfslv
