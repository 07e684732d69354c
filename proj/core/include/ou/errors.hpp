#pragma once

#include <stdexcept>
#include <string>

namespace ou {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when quadrature refinement is exhausted without meeting tolerance.
/// Carries the last two iterates (natural log of magnitude and sign).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous_log, double last_log,
                   int last_order)
      : std::runtime_error(what),
        previous_log_(previous_log),
        last_log_(last_log),
        last_order_(last_order) {}

  double previous_log() const noexcept { return previous_log_; }
  double last_log() const noexcept { return last_log_; }
  int last_order() const noexcept { return last_order_; }

 private:
  double previous_log_;
  double last_log_;
  int last_order_;
};

}  // namespace ou
