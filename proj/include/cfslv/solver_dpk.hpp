#pragma once

#include <cstdint>
#include <vector>

#include "cfslv/gram.hpp"
#include "cfslv/lattice.hpp"

namespace cfslv {

/// Vertices in ℝᵏ where k linearly independent rounding hyperplanes
/// (D⁻¹V)_i x = c_i, c_i half-integer, meet. Deduplicated within 1e-9.
struct VertexSet {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
};

enum class SubsetStrategy {
  /// Average only (k+1)-subsets of vertices that lie in the closure of one
  /// common rounding cell. Every cell's simplices are still visited.
  kSharedCell,
  /// Average every (k+1)-subset of the vertex set.
  kExhaustive,
};

struct DpkSolverOptions {
  /// Limit on (k+1)-subsets examined; also applied to the vertex-count bound.
  std::uint64_t combination_budget = 20'000'000;
  SubsetStrategy strategy = SubsetStrategy::kSharedCell;
};

VertexSet vertex_set(const DpkDecomposition& dec, double psi,
                     std::uint64_t budget = DpkSolverOptions{}.combination_budget);

/// Exact minimizer of aᵀGa over ℤⁿ\{0} for G = D − VVᵀ with D diagonal and V of rank k.
/// Throws InvalidArgument unless validate_dpk(g, dec, 1e-9) holds.
SolverResult solve_dpk(const GramMatrix& g, const DpkDecomposition& dec,
                       const DpkSolverOptions& options = {});

/// build_gram_mimo followed by solve_dpk, or the unit-vector answer when the
/// channel is zero.
SolverResult solve_mimo(const MimoChannel& channel, const DpkSolverOptions& options = {});

/// C(n,k)·(2⌈ψ⌉+2)ᵏ, saturating at UINT64_MAX.
std::uint64_t vertex_bound(std::size_t n, std::size_t k, double psi);

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace cfslv
