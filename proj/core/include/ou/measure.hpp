#pragma once

#include "ou/geometry.hpp"
#include "ou/log_number.hpp"
#include "ou/quadrature.hpp"

namespace ou {

/// log gamma(S) for dgamma = pi^{-n/2} e^{-|x|^2} dx.
///
/// In n = 1 the measure is an erf/erfc difference (no quadrature); in n = 2, 3
/// it is integrated in polar coordinates centred at the ball centre, where
/// the density is smooth. Full space gives log 1 = 0.
LogNumber gamma_log(const Region& set, const QuadratureSpec& spec = {});

}  // namespace ou
