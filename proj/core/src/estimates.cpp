#include "ou/estimates.hpp"

#include <cmath>

#include "ou/errors.hpp"

namespace ou {

namespace {

void require_exponent_pair(double p, double q, const char* where) {
  if (!(p >= 1.0) || !(q > p) || !std::isfinite(q)) {
    throw DomainError(std::string(where) + ": need 1 <= p < q < inf");
  }
}

// 2 / (e^t + 1), written with e^{-t} so it stays finite for large t.
double inner_product_rate(const TimeParam& t) {
  return 2.0 * t.decay() / (1.0 + t.decay());
}

}  // namespace

void OffDiagHypothesis::validate() const {
  require_exponent_pair(p, q, "OffDiagHypothesis");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("OffDiagHypothesis: theta >= 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("OffDiagHypothesis: c > 0");
}

void McIntoshConstant::validate() const {
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("McIntoshConstant: C > 0");
}

double davies_gaffney_bound(const TimeParam& t, double distance, McIntoshConstant C) {
  C.validate();
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw DomainError("davies_gaffney_bound: distance must be positive");
  }
  return C.value * (t.value() / distance) * std::exp(-distance * distance / (2.0 * t.value()));
}

double nelson_min_p(const TimeParam& t) { return 1.0 + t.decay() * t.decay(); }

double delta_exponent(double p, const TimeParam& t) {
  const double p_min = nelson_min_p(t);
  if (!(p > p_min) || !(p <= 2.0)) {
    throw DomainError("delta_exponent: need 1 + e^{-2t} < p <= 2");
  }
  return (0.5 - 1.0 / p) / (0.5 - 1.0 / p_min);
}

LogNumber interpolated_bound_log(double p, const TimeParam& t, double distance,
                                 McIntoshConstant C) {
  const double delta = delta_exponent(p, t);
  const double dg = davies_gaffney_bound(t, distance, C);
  // Far from the diagonal the linear bound underflows; use its log form there.
  const double log_dg = dg > 0.0 ? std::log(dg)
                                 : std::log(C.value) + std::log(t.value() / distance) -
                                       distance * distance / (2.0 * t.value());
  return LogNumber::from_log((1.0 - delta) * log_dg);
}

double failure_threshold(double p, double q) {
  require_exponent_pair(p, q, "failure_threshold");
  const double gap = 1.0 / p - 1.0 / q;
  return std::log1p(gap) - std::log1p(-gap);
}

double blowup_slope(double p, double q, const TimeParam& t) {
  require_exponent_pair(p, q, "blowup_slope");
  return inner_product_rate(t) - 1.0 + (1.0 / p - 1.0 / q);
}

LogNumber lemma_lower_bound_log(const TimeParam& t, double q, int n, double cb_norm) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("lemma_lower_bound_log: need 1 < q < inf");
  if (n < 1) throw DomainError("lemma_lower_bound_log: dimension must be >= 1");
  if (!(cb_norm >= 2.0) || !std::isfinite(cb_norm)) {
    throw DomainError("lemma_lower_bound_log: need |c_B| >= 2");
  }
  const double log_poly = -n * (1.0 + 1.0 / q) * std::log(cb_norm);
  const double rate = inner_product_rate(t) - 1.0 - 1.0 / q;
  return LogNumber::from_log(log_poly + cb_norm * cb_norm * rate);
}

}  // namespace ou
