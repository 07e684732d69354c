#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace ou {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Real number stored as sign and natural log of magnitude. Products and
// quotients are exact in the log domain; sums use log-sum-exp so that
// magnitudes like exp(+-1700) never overflow.
class LogNumber {
 public:
  constexpr LogNumber() = default;

  static constexpr LogNumber zero() { return LogNumber{}; }
  static LogNumber one() { return from_log(0.0); }

  // sign must be +1 or -1; log_magnitude == -inf yields zero.
  static LogNumber from_log(double log_magnitude, int sign = +1);
  static LogNumber from_value(double value);

  int sign() const noexcept { return sign_; }
  double log_magnitude() const noexcept { return log_mag_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  // Linear value; overflows to +-inf or underflows to 0 outside double range.
  double value() const noexcept;
  // True when value() is finite and, for non-zero numbers, not flushed to 0.
  bool representable() const noexcept;

  LogNumber operator-() const noexcept;
  LogNumber operator*(const LogNumber& rhs) const noexcept;
  LogNumber operator/(const LogNumber& rhs) const;
  LogNumber operator+(const LogNumber& rhs) const noexcept;
  LogNumber operator-(const LogNumber& rhs) const noexcept;
  LogNumber abs() const noexcept;
  // |x|^p keeping the sign only for p == 1.
  LogNumber pow(double exponent) const;

  bool operator==(const LogNumber&) const = default;
  std::partial_ordering operator<=>(const LogNumber& rhs) const noexcept;

 private:
  constexpr LogNumber(int sign, double log_mag) : sign_(sign), log_mag_(log_mag) {}

  int sign_ = 0;
  double log_mag_ = kNegInf;
};

// log(exp(a) + exp(b)).
double log_add(double a, double b) noexcept;
// log(exp(a) - exp(b)) for a >= b; -inf when equal.
double log_sub(double a, double b);
// log(1 - exp(x)) for x <= 0, accurate near both ends.
double log1mexp(double x);

double log_sum_exp(std::span<const double> terms) noexcept;

// Streaming log-sum-exp over signed terms. The running maximum is rescaled
// lazily so each add() costs one exp in the common case.
class LogAccumulator {
 public:
  void add_log(double log_term) noexcept { positive_.add(log_term); }
  void add(const LogNumber& term) noexcept;
  LogNumber result() const;
  double log_result_positive() const noexcept { return positive_.log_value(); }

 private:
  struct OneSided {
    double max = kNegInf;
    double scaled_sum = 0.0;
    void add(double log_term) noexcept;
    double log_value() const noexcept;
  };
  OneSided positive_;
  OneSided negative_;
};

}  // namespace ou
