#include "ou/log_number.hpp"

#include <algorithm>
#include <numbers>

#include "ou/errors.hpp"

namespace ou {

LogNumber LogNumber::from_log(double log_magnitude, int sign) {
  if (std::isnan(log_magnitude)) {
    throw DomainError("LogNumber: NaN log-magnitude");
  }
  if (sign != 1 && sign != -1) {
    throw DomainError("LogNumber: sign must be +1 or -1");
  }
  if (log_magnitude == kNegInf) return zero();
  return LogNumber{sign, log_magnitude};
}

LogNumber LogNumber::from_value(double value) {
  if (std::isnan(value)) throw DomainError("LogNumber: NaN value");
  if (value == 0.0) return zero();
  return LogNumber{value > 0 ? 1 : -1, std::log(std::abs(value))};
}

double LogNumber::value() const noexcept {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_mag_);
}

bool LogNumber::representable() const noexcept {
  if (sign_ == 0) return true;
  const double v = std::exp(log_mag_);
  return std::isfinite(v) && v > 0.0;
}

LogNumber LogNumber::operator-() const noexcept { return LogNumber{-sign_, log_mag_}; }

LogNumber LogNumber::operator*(const LogNumber& rhs) const noexcept {
  if (sign_ == 0 || rhs.sign_ == 0) return zero();
  return LogNumber{sign_ * rhs.sign_, log_mag_ + rhs.log_mag_};
}

LogNumber LogNumber::operator/(const LogNumber& rhs) const {
  if (rhs.sign_ == 0) throw DomainError("LogNumber: division by zero");
  if (sign_ == 0) return zero();
  return LogNumber{sign_ * rhs.sign_, log_mag_ - rhs.log_mag_};
}

LogNumber LogNumber::operator+(const LogNumber& rhs) const noexcept {
  if (sign_ == 0) return rhs;
  if (rhs.sign_ == 0) return *this;
  if (sign_ == rhs.sign_) return LogNumber{sign_, log_add(log_mag_, rhs.log_mag_)};
  if (log_mag_ == rhs.log_mag_) return zero();
  if (log_mag_ > rhs.log_mag_) {
    return LogNumber{sign_, log_mag_ + log1mexp(rhs.log_mag_ - log_mag_)};
  }
  return LogNumber{rhs.sign_, rhs.log_mag_ + log1mexp(log_mag_ - rhs.log_mag_)};
}

LogNumber LogNumber::operator-(const LogNumber& rhs) const noexcept { return *this + (-rhs); }

LogNumber LogNumber::abs() const noexcept {
  return sign_ == 0 ? zero() : LogNumber{1, log_mag_};
}

LogNumber LogNumber::pow(double exponent) const {
  if (exponent <= 0.0) throw DomainError("LogNumber::pow: exponent must be positive");
  if (sign_ == 0) return zero();
  const int s = exponent == 1.0 ? sign_ : 1;
  return LogNumber{s, log_mag_ * exponent};
}

std::partial_ordering LogNumber::operator<=>(const LogNumber& rhs) const noexcept {
  if (sign_ != rhs.sign_) return sign_ <=> rhs.sign_;
  if (sign_ == 0) return std::partial_ordering::equivalent;
  return sign_ > 0 ? (log_mag_ <=> rhs.log_mag_) : (rhs.log_mag_ <=> log_mag_);
}

double log_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log1mexp(double x) {
  if (x > 0.0) throw DomainError("log1mexp: argument must be <= 0");
  if (x == 0.0) return kNegInf;
  return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double log_sub(double a, double b) {
  if (b > a) throw DomainError("log_sub: result would be negative");
  if (b == kNegInf) return a;
  return a + log1mexp(b - a);
}

double log_sum_exp(std::span<const double> terms) noexcept {
  double hi = kNegInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

void LogAccumulator::OneSided::add(double log_term) noexcept {
  if (log_term == kNegInf) return;
  if (log_term <= max) {
    scaled_sum += std::exp(log_term - max);
  } else {
    scaled_sum = scaled_sum * std::exp(max - log_term) + 1.0;
    max = log_term;
  }
}

double LogAccumulator::OneSided::log_value() const noexcept {
  if (max == kNegInf) return kNegInf;
  return max + std::log(scaled_sum);
}

void LogAccumulator::add(const LogNumber& term) noexcept {
  if (term.sign() > 0) {
    positive_.add(term.log_magnitude());
  } else if (term.sign() < 0) {
    negative_.add(term.log_magnitude());
  }
}

LogNumber LogAccumulator::result() const {
  const double pos = positive_.log_value();
  const double neg = negative_.log_value();
  LogNumber p = pos == kNegInf ? LogNumber::zero() : LogNumber::from_log(pos);
  LogNumber n = neg == kNegInf ? LogNumber::zero() : LogNumber::from_log(neg, -1);
  return p + n;
}

}  // namespace ou
