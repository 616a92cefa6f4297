#pragma once

#include "cfslv/lattice.hpp"

namespace cfslv {

/// ½ log₂⁺((‖a‖² − P(hᵀa)²/(1+P‖h‖²))⁻¹), in bits per channel use.
double computation_rate(const ChannelVector& h, double power, const CoefficientVector& a);

/// ½ log₂⁺((1+P‖h‖²)/f), the same rate recovered from f(a) = aᵀGa.
double rate_from_objective(double f_value, const ChannelVector& h, double power);

/// ½ log₂⁺(1/f) for a MIMO Gram matrix.
double mimo_rate_from_objective(double f_value);

}  // namespace cfslv
