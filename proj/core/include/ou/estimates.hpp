#pragma once

#include "ou/log_number.hpp"
#include "ou/mehler.hpp"

namespace ou {

/// Parameters (p, q, theta, c) of the L^p-L^q off-diagonal template
///
///   ||1_F e^{tL} 1_E f||_q <= K t^{-theta} exp(-c dist(E,F)^2 / t) ||1_E f||_p.
struct OffDiagHypothesis {
  double p = 1.0;
  double q = 2.0;
  double theta = 0.0;
  double c = 0.5;

  void validate() const;
};

/// Unquantified constant of the L^2 Davies-Gaffney estimate; defaults to 1.
struct McIntoshConstant {
  double value = 1.0;
  void validate() const;
};

// C (t/d) exp(-d^2 / 2t); requires d > 0.
double davies_gaffney_bound(const TimeParam& t, double distance, McIntoshConstant C = {});

// Smallest exponent for L^p -> L^2 contractivity: 1 + e^{-2t}.
double nelson_min_p(const TimeParam& t);

// (1/2 - 1/p) / (1/2 - 1/(1 + e^{-2t})) for p in (1 + e^{-2t}, 2]; lies in [0, 1).
double delta_exponent(double p, const TimeParam& t);

// (1 - delta(p,t)) log(davies_gaffney_bound(t, d, C)).
LogNumber interpolated_bound_log(double p, const TimeParam& t, double distance,
                                 McIntoshConstant C = {});

// t* = log((1 + (1/p - 1/q)) / (1 - (1/p - 1/q))); estimates fail below t*.
double failure_threshold(double p, double q);

// 2/(e^t + 1) - 1 + (1/p - 1/q): coefficient of |c_B|^2 in the log of the
// implied constant on the maximal admissible testing family.
double blowup_slope(double p, double q, const TimeParam& t);

// -n (1 + 1/q) log|c_B| + |c_B|^2 (2/(e^t + 1) - 1 - 1/q). The (k, n, t)
// dependent multiplicative constant of the lower bound is not included.
LogNumber lemma_lower_bound_log(const TimeParam& t, double q, int n, double cb_norm);

}  // namespace ou
