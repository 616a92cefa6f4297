#include "cfslv/rate.hpp"

#include <cmath>

#include "cfslv/errors.hpp"

namespace cfslv {

namespace {

// ½ log₂⁺(1/x) for x > 0.
double half_log2_plus_inverse(double x) { return x >= 1.0 ? 0.0 : -0.5 * std::log2(x); }

void check_power(double power) {
  if (!std::isfinite(power) || !(power > 0.0)) throw InvalidArgument("power must be finite and positive");
}

}  // namespace

double computation_rate(const ChannelVector& h, double power, const CoefficientVector& a) {
  check_power(power);
  if (a.size() != h.size()) throw InvalidArgument("computation_rate: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) dot += h[i] * static_cast<double>(a[i]);
  const double denominator =
      static_cast<double>(a.norm_squared()) - power * dot * dot / (1.0 + power * h.norm_squared());
  if (!(denominator > 0.0)) throw std::domain_error("computation_rate: non-positive effective noise");
  return half_log2_plus_inverse(denominator);
}

double rate_from_objective(double f_value, const ChannelVector& h, double power) {
  check_power(power);
  if (!(f_value > 0.0)) throw InvalidArgument("objective must be positive");
  return half_log2_plus_inverse(f_value / (1.0 + power * h.norm_squared()));
}

double mimo_rate_from_objective(double f_value) {
  if (!(f_value > 0.0)) throw InvalidArgument("objective must be positive");
  return half_log2_plus_inverse(f_value);
}

}  // namespace cfslv
