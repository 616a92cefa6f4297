#include "cfslv/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cfslv/eigen.hpp"
#include "cfslv/errors.hpp"

namespace cfslv {

ChannelVector::ChannelVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("channel vector must have at least one entry");
  for (double x : entries_)
    if (!std::isfinite(x)) throw InvalidArgument("channel vector has a non-finite entry");
}

double ChannelVector::norm_squared() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return s;
}

bool ChannelVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double x) { return x == 0.0; });
}

ChannelVector ChannelVector::negated() const {
  std::vector<double> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(), [](double x) { return -x; });
  return ChannelVector(std::move(out));
}

CoefficientVector::CoefficientVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
  if (std::all_of(entries_.begin(), entries_.end(), [](Integer x) { return x == 0; }))
    throw InvalidArgument("coefficient vector must be nonzero");
}

CoefficientVector CoefficientVector::unit(std::size_t n, std::size_t axis) {
  if (axis >= n) throw InvalidArgument("unit vector axis out of range");
  std::vector<Integer> e(n, 0);
  e[axis] = 1;
  return CoefficientVector(std::move(e));
}

Integer CoefficientVector::norm_squared() const {
  Integer s = 0;
  for (Integer x : entries_) s += x * x;
  return s;
}

bool CoefficientVector::is_signed_unit() const { return norm_squared() == 1; }

GramMatrix::GramMatrix(Matrix entries, double lambda_min)
    : entries_(std::move(entries)), lambda_min_(lambda_min) {}

namespace {

Matrix symmetrized(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InvalidArgument("Gram matrix must be square and non-empty");
  if (!m.all_finite()) throw InvalidArgument("Gram matrix has a non-finite entry");
  if (!is_symmetric(m)) throw InvalidArgument("Gram matrix is not symmetric");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return m;
}

}  // namespace

GramMatrix::GramMatrix(Matrix entries) : entries_(symmetrized(std::move(entries))) {
  const auto eig = symmetric_eig(entries_);
  lambda_min_ = eig.values.back();
  if (!(lambda_min_ > 0.0)) throw InvalidArgument("Gram matrix is not positive definite");
}

GramMatrix GramMatrix::with_known_min_eigenvalue(Matrix entries, double lambda_min) {
  if (!(lambda_min > 0.0)) throw InvalidArgument("Gram matrix is not positive definite");
  return GramMatrix(symmetrized(std::move(entries)), lambda_min);
}

double GramMatrix::min_diagonal() const { return entries_(argmin_diagonal(), argmin_diagonal()); }

std::size_t GramMatrix::argmin_diagonal() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dim(); ++i)
    if (entries_(i, i) < entries_(best, best)) best = i;
  return best;
}

DpkDecomposition::DpkDecomposition(std::vector<double> d, Matrix v) : d_(std::move(d)), v_(std::move(v)) {
  const std::size_t n = d_.size();
  if (n == 0) throw InvalidArgument("decomposition must have n >= 1");
  if (v_.rows() != n) throw InvalidArgument("V must have one row per diagonal entry");
  if (v_.cols() == 0) throw InvalidArgument("decomposition rank k must be >= 1");
  if (v_.cols() > n) throw InvalidArgument("decomposition rank k exceeds n");
  for (double x : d_)
    if (!std::isfinite(x) || !(x > 0.0)) throw InvalidArgument("diagonal D must be finite and positive");
  if (!v_.all_finite()) throw InvalidArgument("V has a non-finite entry");
}

Matrix DpkDecomposition::scaled_v() const {
  Matrix m = v_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (double& x : m.row(i)) x /= d_[i];
  return m;
}

Matrix DpkDecomposition::to_matrix() const {
  return Matrix::diagonal(d_) - v_ * v_.transposed();
}

double quadratic_form(const GramMatrix& g, std::span<const Integer> a) {
  const std::size_t n = g.dim();
  if (a.size() != n) throw InvalidArgument("quadratic_form: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    double row = 0.0;
    auto gi = g.matrix().row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (a[j] != 0) row += gi[j] * static_cast<double>(a[j]);
    total += static_cast<double>(a[i]) * row;
  }
  return total;
}

double quadratic_form(const GramMatrix& g, const CoefficientVector& a) {
  return quadratic_form(g, a.entries());
}

Integer round_half_up(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot round a non-finite value");
  constexpr double kLimit = 4.0e18;
  if (std::abs(x) > kLimit) throw InvalidArgument("value out of integer range");
  // x − floor(x) is exact in binary floating point, unlike floor(x + 0.5).
  const double lower = std::floor(x);
  return static_cast<Integer>(lower) + (x - lower >= 0.5 ? 1 : 0);
}

std::vector<Integer> round_half_up_vector(std::span<const double> v) {
  std::vector<Integer> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return round_half_up(x); });
  return out;
}

CoefficientVector canonical_sign(const CoefficientVector& a) {
  auto entries = a.entries();
  auto first = std::find_if(entries.begin(), entries.end(), [](Integer x) { return x != 0; });
  if (*first > 0) return a;
  std::vector<Integer> flipped(entries.size());
  std::transform(entries.begin(), entries.end(), flipped.begin(), [](Integer x) { return -x; });
  return CoefficientVector(std::move(flipped));
}

}  // namespace cfslv
