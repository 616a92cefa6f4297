#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "cfslv/matrix.hpp"

namespace cfslv {

using Integer = std::int64_t;

/// Real channel gains h of a single-antenna relay. Non-empty, all finite.
class ChannelVector {
 public:
  explicit ChannelVector(std::vector<double> entries);
  ChannelVector(std::initializer_list<double> entries)
      : ChannelVector(std::vector<double>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }

  double norm_squared() const;
  bool is_zero() const;
  ChannelVector negated() const;

 private:
  std::vector<double> entries_;
};

/// Nonzero integer coefficient vector a.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<Integer> entries);
  CoefficientVector(std::initializer_list<Integer> entries)
      : CoefficientVector(std::vector<Integer>(entries)) {}

  static CoefficientVector unit(std::size_t n, std::size_t axis);

  std::size_t size() const { return entries_.size(); }
  Integer operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Integer> entries() const { return entries_; }

  Integer norm_squared() const;
  /// True for ±e_i.
  bool is_signed_unit() const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  std::vector<Integer> entries_;
};

/// Symmetric positive-definite Gram matrix G defining f(a) = aᵀGa.
///
/// The checked constructor symmetrizes inputs that are symmetric up to a
/// relative 1e-12 and rejects anything else, then confirms positive
/// definiteness with the Jacobi eigensolver. Builders that know the smallest
/// eigenvalue in closed form use `with_known_min_eigenvalue` and skip the
/// eigensolve.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix entries);

  static GramMatrix with_known_min_eigenvalue(Matrix entries, double lambda_min);

  std::size_t dim() const { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& matrix() const { return entries_; }

  double min_eigenvalue() const { return lambda_min_; }
  double min_diagonal() const;
  /// First index attaining the smallest diagonal entry.
  std::size_t argmin_diagonal() const;

 private:
  GramMatrix(Matrix entries, double lambda_min);

  Matrix entries_;
  double lambda_min_ = 0.0;
};

/// G = D − VVᵀ with D diagonal positive and V an n×k matrix, 1 ≤ k ≤ n.
///
/// Construction checks shapes, finiteness and d > 0. Linear independence of
/// the columns of V and agreement with a particular Gram matrix are checked
/// by `validate_dpk`.
class DpkDecomposition {
 public:
  DpkDecomposition(std::vector<double> d, Matrix v);

  std::size_t dim() const { return d_.size(); }
  std::size_t rank() const { return v_.cols(); }
  std::span<const double> d() const { return d_; }
  const Matrix& v() const { return v_; }

  /// D⁻¹V, the n×k matrix whose rows define the rounding hyperplanes.
  Matrix scaled_v() const;
  /// D − VVᵀ.
  Matrix to_matrix() const;

 private:
  std::vector<double> d_;
  Matrix v_;
};

/// Outcome of one solver or oracle call.
struct SolverResult {
  explicit SolverResult(CoefficientVector a) : a_star(std::move(a)) {}

  CoefficientVector a_star;
  double f_star = 0.0;
  std::uint64_t candidates_evaluated = 0;
  std::uint64_t breakpoint_count = 0;
  double elapsed_seconds = 0.0;
  double search_radius = 0.0;
  /// Real point whose rounding produced a_star; empty when a_star came from
  /// the unit-vector sweep.
  std::vector<double> witness;
};

/// aᵀGa.
double quadratic_form(const GramMatrix& g, const CoefficientVector& a);
double quadratic_form(const GramMatrix& g, std::span<const Integer> a);

/// Nearest integer per entry, exact half-integers rounded toward +∞.
std::vector<Integer> round_half_up_vector(std::span<const double> v);
Integer round_half_up(double x);

/// The representative of {a, −a} whose first nonzero entry is positive.
CoefficientVector canonical_sign(const CoefficientVector& a);

}  // namespace cfslv
