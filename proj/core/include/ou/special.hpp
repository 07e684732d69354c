#pragma once

#include "ou/log_number.hpp"

namespace ou {

// log(erfc(x)), finite for every finite x (continued fraction in the far tail).
double log_erfc(double x);

// gamma([a, b]) for the one-dimensional Gaussian measure pi^{-1/2} e^{-x^2} dx,
// from differences of erf/erfc chosen to avoid cancellation. a <= b; either
// end may be infinite.
LogNumber gamma_interval_log(double a, double b);

// Physicists' Hermite polynomial H_k, orthogonal for e^{-x^2}; L H_k = -k H_k.
double hermite_h(int k, double x);

}  // namespace ou
