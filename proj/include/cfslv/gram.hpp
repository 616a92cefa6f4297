#pragma once

#include <optional>

#include "cfslv/lattice.hpp"
#include "cfslv/matrix.hpp"

namespace cfslv {

/// Multi-antenna relay: column i of `h_matrix` is the channel to antenna i.
class MimoChannel {
 public:
  MimoChannel(Matrix h_matrix, double power);

  std::size_t users() const { return h_.rows(); }
  std::size_t antennas() const { return h_.cols(); }
  const Matrix& h_matrix() const { return h_; }
  double power() const { return power_; }

 private:
  Matrix h_;
  double power_;
};

struct MimoGram {
  GramMatrix gram;
  /// Absent when HHᵀ has no eigenvalue above 1e-12 (G = I).
  std::optional<DpkDecomposition> decomposition;
};

/// (1 + P‖h‖²)I − P hhᵀ.
GramMatrix build_gram_single(const ChannelVector& h, double power);

/// D = (1 + P‖h‖²)I, V = √P·h. Throws InvalidArgument for h = 0.
DpkDecomposition dpk_from_single(const ChannelVector& h, double power);

/// G = I − Σ (Pγᵢ²/(1+Pγᵢ²)) wᵢwᵢᵀ over the k largest eigenpairs (γᵢ², wᵢ)
/// of HHᵀ. Eigenvalues ≤ 1e-12 are dropped, shrinking the effective rank.
MimoGram build_gram_mimo(const MimoChannel& channel);

/// True iff ‖G − (D − VVᵀ)‖_max ≤ tol·max(1, ‖G‖_max) and the columns of V
/// are linearly independent (σ_min > 1e-10·σ_max).
bool validate_dpk(const GramMatrix& g, const DpkDecomposition& dec, double tol);

/// √(G_min / λ_min), a bound on the norm of every minimizer.
double search_radius_psi(const GramMatrix& g);

}  // namespace cfslv
