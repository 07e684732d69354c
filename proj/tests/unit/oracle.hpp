#pragma once

// Reference computations that share no code with the library: long double
// erf differences and composite Simpson sums.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// gamma([a, b]) in one dimension.
inline long double interval_measure(long double a, long double b) {
  if (a >= 0) return 0.5L * (std::erfc(a) - std::erfc(b));
  if (b <= 0) return 0.5L * (std::erfc(-b) - std::erfc(-a));
  return 0.5L * (std::erf(b) - std::erf(a));
}

// e^{tL} 1_[a,b] (y) by pulling the indicator back along the translation form.
inline long double semigroup_indicator(long double t, long double a, long double b,
                                       long double y) {
  const long double e = std::exp(-t);
  const long double s = std::sqrt(-std::expm1(-2 * t));
  return interval_measure((a - e * y) / s, (b - e * y) / s);
}

// Composite Simpson rule with `panels` (even) subintervals.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int panels) {
  const long double h = (b - a) / panels;
  long double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4 : 2) * f(a + i * h);
  return sum * h / 3;
}

inline long double gauss_density(long double x) {
  return std::exp(-x * x) / std::sqrt(std::numbers::pi_v<long double>);
}

}  // namespace oracle
