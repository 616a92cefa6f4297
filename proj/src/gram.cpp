#include "cfslv/gram.hpp"

#include <algorithm>
#include <cmath>

#include "cfslv/eigen.hpp"
#include "cfslv/errors.hpp"

namespace cfslv {

namespace {

void check_power(double power) {
  if (!std::isfinite(power) || !(power > 0.0)) throw InvalidArgument("power must be finite and positive");
}

constexpr double kZeroEigenvalue = 1e-12;

}  // namespace

MimoChannel::MimoChannel(Matrix h_matrix, double power) : h_(std::move(h_matrix)), power_(power) {
  check_power(power_);
  if (h_.rows() == 0 || h_.cols() == 0) throw InvalidArgument("channel matrix must be non-empty");
  if (h_.cols() > h_.rows()) throw InvalidArgument("channel matrix needs k <= n (antennas <= users)");
  if (!h_.all_finite()) throw InvalidArgument("channel matrix has a non-finite entry");
}

GramMatrix build_gram_single(const ChannelVector& h, double power) {
  check_power(power);
  const std::size_t n = h.size();
  const double scale = 1.0 + power * h.norm_squared();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = (i == j ? scale : 0.0) - power * h[i] * h[j];
  // Eigenvalue 1 along h, 1 + P‖h‖² on its orthogonal complement.
  return GramMatrix::with_known_min_eigenvalue(std::move(g), 1.0);
}

DpkDecomposition dpk_from_single(const ChannelVector& h, double power) {
  check_power(power);
  if (h.is_zero()) throw InvalidArgument("zero channel has no rank-1 decomposition; use G = I");
  const double scale = 1.0 + power * h.norm_squared();
  Matrix v(h.size(), 1);
  const double root_p = std::sqrt(power);
  for (std::size_t i = 0; i < h.size(); ++i) v(i, 0) = root_p * h[i];
  return DpkDecomposition(std::vector<double>(h.size(), scale), std::move(v));
}

MimoGram build_gram_mimo(const MimoChannel& channel) {
  const Matrix& h = channel.h_matrix();
  const std::size_t n = channel.users();
  const std::size_t k = channel.antennas();
  const double power = channel.power();

  const auto eig = symmetric_eig(h * h.transposed());

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i)
    if (eig.values[i] > kZeroEigenvalue) kept.push_back(i);

  if (kept.empty()) return MimoGram{GramMatrix::with_known_min_eigenvalue(Matrix::identity(n), 1.0), std::nullopt};

  Matrix v(n, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const double gamma2 = eig.values[kept[c]];
    const double weight = std::sqrt(power * gamma2 / (1.0 + power * gamma2));
    for (std::size_t r = 0; r < n; ++r) v(r, c) = eig.vectors(r, kept[c]) * weight;
  }
  DpkDecomposition dec(std::vector<double>(n, 1.0), std::move(v));
  GramMatrix g(dec.to_matrix());
  return MimoGram{std::move(g), std::move(dec)};
}

bool validate_dpk(const GramMatrix& g, const DpkDecomposition& dec, double tol) {
  if (g.dim() != dec.dim()) return false;
  const double residual = (g.matrix() - dec.to_matrix()).max_abs();
  if (!(residual <= tol * std::max(1.0, g.matrix().max_abs()))) return false;
  const auto sv = singular_values(dec.v());
  return sv.front() > 0.0 && sv.back() > 1e-10 * sv.front();
}

double search_radius_psi(const GramMatrix& g) {
  const double lambda_min = g.min_eigenvalue();
  if (lambda_min <= kZeroEigenvalue) throw InvalidArgument("Gram matrix is numerically singular");
  return std::sqrt(g.min_diagonal() / lambda_min);
}

}  // namespace cfslv
