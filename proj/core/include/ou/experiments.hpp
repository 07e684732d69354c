#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ou/estimates.hpp"
#include "ou/geometry.hpp"
#include "ou/log_number.hpp"
#include "ou/mehler.hpp"
#include "ou/quadrature.hpp"

namespace ou {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept; needs two distinct x.
LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

/// log (int_{C_k(B)} |e^{tL} 1_B|^q dgamma)^{1/q} for a maximal admissible
/// ball B with 2^k <= |c_B|, k >= 1.
LogNumber offdiag_lhs_log(const TimeParam& t, double q, const Ball& ball, int k,
                          const QuadratureSpec& spec);

/// log of the constant the off-diagonal template would need for (B, C_k(B))
/// and f = 1_B:
///   lhs - [-theta log t - c dist(B, C_k(B))^2 / t + (1/p) log gamma(B)].
LogNumber implied_constant_log(const OffDiagHypothesis& hyp, const TimeParam& t, const Ball& ball,
                               int k, const QuadratureSpec& spec);

struct SweepRow {
  double cb_norm = 0.0;
  double log_lhs = 0.0;
  double log_gamma_b = 0.0;
  double log_implied_constant = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending cb_norm
  double fitted_slope = 0.0;   // least squares of log_implied_constant on cb_norm^2
  double fitted_intercept = 0.0;
  double predicted_slope = 0.0;
  double slope_rel_error = 0.0;  // NaN when predicted_slope == 0
  // False when a grid point failed; rows then hold the points before it.
  bool complete = true;
  std::string failure;
};

/// Implied constants along c_B = r e_1, r in cb_grid, with B maximal
/// admissible. Points are evaluated concurrently when `parallel` is set;
/// rows are always in ascending order and bitwise reproducible.
SweepResult sweep_blowup(const OffDiagHypothesis& hyp, const TimeParam& t, int k, int n,
                         std::span<const double> cb_grid, const QuadratureSpec& spec,
                         bool parallel = true);

struct HypercontractivityCheck {
  double ratio_closed_form = 0.0;
  double ratio_numeric = 0.0;
};

/// ||e^{tL} f||_2 / ||f||_p for f(x) = e^{lambda x} in n = 1, in closed form
/// exp(lambda^2 (1 + e^{-2t} - p) / 4) and by nested quadrature of the kernel.
HypercontractivityCheck hypercontractivity_check(const TimeParam& t, double p, double lambda,
                                                 const QuadratureSpec& spec);

struct DaviesGaffneyCheck {
  double lhs_log = 0.0;          // log ||1_F e^{tL} u||_2 / ||u||_2, u = amplitude 1_B
  double rhs_log_with_c1 = 0.0;  // log (t/d) exp(-d^2 / 2t), d = dist(B, C_k(B))
};

DaviesGaffneyCheck davies_gaffney_check(const TimeParam& t, const Ball& ball, int k,
                                        const QuadratureSpec& spec, double amplitude = 1.0);

enum class Regime {
  fails_restricted,       // t < t*(p, q)
  holds_unrestricted,     // q = 2 and 1 + e^{-2t} < p <= 2
  conjectured_extension,  // q != 2 with p above the L^p-L^q contractivity exponent; unproven
  unknown,
};

std::string_view to_string(Regime regime) noexcept;

struct RegimeCell {
  double p = 0.0;
  double q = 0.0;
  double t = 0.0;
  double t_star = 0.0;
  // Contractivity exponent 1 + (q - 1) e^{-2t}; equals 1 + e^{-2t} for q = 2.
  double p_nelson = 0.0;
  Regime regime = Regime::unknown;
  // Both the failure and the positive predicate held. Never expected.
  bool overlap = false;
};

struct SkippedCell {
  double p = 0.0;
  double q = 0.0;
  double t = 0.0;
  std::string reason;
};

struct RegimeMap {
  std::vector<RegimeCell> cells;  // p outermost, then q, then t
  std::vector<SkippedCell> skipped;
};

RegimeCell classify_regime(double p, double q, double t);

RegimeMap regime_map(std::span<const double> p_grid, std::span<const double> q_grid,
                     std::span<const double> t_grid);

}  // namespace ou
