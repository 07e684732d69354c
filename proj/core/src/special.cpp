#include "ou/special.hpp"

#include <cmath>
#include <numbers>

#include "ou/errors.hpp"

namespace ou {

namespace {

constexpr double kLogHalf = -std::numbers::ln2;
// Below this std::erfc keeps full relative accuracy and does not underflow.
constexpr double kErfcDirectLimit = 25.0;

// erfc(x) = exp(-x^2) / sqrt(pi) * K(x), K from the Laplace continued fraction
// 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
double log_erfc_tail(double x) {
  double tail = 0.0;
  for (int j = 80; j >= 1; --j) tail = (0.5 * j) / (x + tail);
  const double k = 1.0 / (x + tail);
  return -x * x - 0.5 * std::log(std::numbers::pi) + std::log(k);
}

}  // namespace

double log_erfc(double x) {
  if (std::isnan(x)) throw DomainError("log_erfc: NaN argument");
  if (x == -INFINITY) return std::log(2.0);
  if (x == INFINITY) return kNegInf;
  if (x < kErfcDirectLimit) return std::log(std::erfc(x));
  return log_erfc_tail(x);
}

LogNumber gamma_interval_log(double a, double b) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw DomainError("gamma_interval_log: need a <= b");
  }
  if (a == b) return LogNumber::zero();
  if (b <= 0.0) return gamma_interval_log(-b, -a);
  if (a >= 0.0) {
    // (erfc(a) - erfc(b)) / 2
    return LogNumber::from_log(kLogHalf + log_sub(log_erfc(a), log_erfc(b)));
  }
  return LogNumber::from_value(0.5 * (std::erf(b) - std::erf(a)));
}

double hermite_h(int k, double x) {
  if (k < 0) throw DomainError("hermite_h: degree must be non-negative");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace ou
