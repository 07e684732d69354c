#include "ou/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <sstream>

#include "ou/errors.hpp"
#include "ou/measure.hpp"

namespace ou {

namespace {

void require_testing_pair(const Ball& ball, int k, const char* where) {
  if (k < 1) throw DomainError(std::string(where) + ": need k >= 1");
  if (ball.dim() > kMaxDim) throw DomainError(std::string(where) + ": unsupported dimension");
  if (!is_maximal_admissible(ball)) {
    throw DomainError(std::string(where) + ": ball must be maximal admissible");
  }
  if (ball.center().norm() < std::ldexp(1.0, k) * (1.0 - 1e-12)) {
    throw DomainError(std::string(where) + ": need 2^k <= |c_B|");
  }
}

struct ImpliedParts {
  LogNumber lhs;
  LogNumber gamma_b;
  LogNumber implied;
};

ImpliedParts implied_parts(const OffDiagHypothesis& hyp, const TimeParam& t, const Ball& ball,
                           int k, const QuadratureSpec& spec) {
  hyp.validate();
  const LogNumber lhs = offdiag_lhs_log(t, hyp.q, ball, k, spec);
  const LogNumber gamma_b = gamma_log(ball, spec);
  const double d = set_distance(ball, Annulus(ball, k));
  const double log_rhs = -hyp.theta * std::log(t.value()) - hyp.c * d * d / t.value() +
                         gamma_b.log_magnitude() / hyp.p;
  return {lhs, gamma_b, LogNumber::from_log(lhs.log_magnitude() - log_rhs)};
}

}  // namespace

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("least_squares_fit: need at least two paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("least_squares_fit: abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

LogNumber offdiag_lhs_log(const TimeParam& t, double q, const Ball& ball, int k,
                          const QuadratureSpec& spec) {
  require_testing_pair(ball, k, "offdiag_lhs_log");
  const Annulus annulus(ball, k);
  return lq_norm_log([&](const Point& y) { return apply_indicator_log(t, ball, y, spec); },
                     annulus, q, spec);
}

LogNumber implied_constant_log(const OffDiagHypothesis& hyp, const TimeParam& t, const Ball& ball,
                               int k, const QuadratureSpec& spec) {
  return implied_parts(hyp, t, ball, k, spec).implied;
}

SweepResult sweep_blowup(const OffDiagHypothesis& hyp, const TimeParam& t, int k, int n,
                         std::span<const double> cb_grid, const QuadratureSpec& spec,
                         bool parallel) {
  hyp.validate();
  spec.validate();
  if (k < 1) throw DomainError("sweep_blowup: need k >= 1");
  if (n < 1 || n > static_cast<int>(kMaxDim)) throw DomainError("sweep_blowup: n must be 1, 2 or 3");
  if (cb_grid.size() < 4) throw DomainError("sweep_blowup: grid needs at least 4 points");
  std::vector<double> grid(cb_grid.begin(), cb_grid.end());
  std::sort(grid.begin(), grid.end());
  for (double c : grid) {
    if (!std::isfinite(c) || c < std::ldexp(1.0, k)) {
      throw DomainError("sweep_blowup: every |c_B| must satisfy 2^k <= |c_B|");
    }
  }
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw DomainError("sweep_blowup: grid values must be distinct");
  }

  auto evaluate = [&](double c) {
    const Ball ball = make_maximal_admissible_ball(Point::on_axis(n, c));
    const ImpliedParts parts = implied_parts(hyp, t, ball, k, spec);
    return SweepRow{c, parts.lhs.log_magnitude(), parts.gamma_b.log_magnitude(),
                    parts.implied.log_magnitude()};
  };

  SweepResult result;
  result.predicted_slope = blowup_slope(hyp.p, hyp.q, t);

  std::vector<std::future<SweepRow>> pending;
  if (parallel) {
    for (double c : grid) pending.push_back(std::async(std::launch::async, evaluate, c));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      result.rows.push_back(parallel ? pending[i].get() : evaluate(grid[i]));
    } catch (const ConvergenceError& e) {
      result.complete = false;
      std::ostringstream os;
      os << "|c_B| = " << grid[i] << ": " << e.what();
      result.failure = os.str();
      break;
    }
  }
  // Outstanding futures are joined by their destructors.

  if (!result.complete) {
    result.fitted_slope = result.fitted_intercept = result.slope_rel_error = NAN;
    return result;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const SweepRow& row : result.rows) {
    xs.push_back(row.cb_norm * row.cb_norm);
    ys.push_back(row.log_implied_constant);
  }
  const LinearFit fit = least_squares_fit(xs, ys);
  result.fitted_slope = fit.slope;
  result.fitted_intercept = fit.intercept;
  result.slope_rel_error = result.predicted_slope != 0.0
                               ? std::abs(fit.slope - result.predicted_slope) /
                                     std::abs(result.predicted_slope)
                               : NAN;
  return result;
}

HypercontractivityCheck hypercontractivity_check(const TimeParam& t, double p, double lambda,
                                                 const QuadratureSpec& spec) {
  if (!(p > 1.0) || !(p <= 2.0)) throw DomainError("hypercontractivity_check: need 1 < p <= 2");
  if (!std::isfinite(lambda)) throw DomainError("hypercontractivity_check: lambda must be finite");
  const FullSpace line{1};
  auto f_lambda = [lambda](const Point& x) { return LogNumber::from_log(lambda * x[0]); };

  const LogNumber norm_p = lq_norm_log(f_lambda, line, p, spec);
  const LogNumber norm_2 = lq_norm_log(
      [&](const Point& y) { return apply_kernel_log(t, f_lambda, line, y, spec); }, line, 2.0,
      spec);

  HypercontractivityCheck out;
  out.ratio_closed_form = std::exp(lambda * lambda * (nelson_min_p(t) - p) / 4.0);
  out.ratio_numeric = std::exp(norm_2.log_magnitude() - norm_p.log_magnitude());
  return out;
}

DaviesGaffneyCheck davies_gaffney_check(const TimeParam& t, const Ball& ball, int k,
                                        const QuadratureSpec& spec, double amplitude) {
  if (k < 1) throw DomainError("davies_gaffney_check: need k >= 1");
  if (!(amplitude != 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("davies_gaffney_check: amplitude must be finite and non-zero");
  }
  const Annulus annulus(ball, k);
  const double log_amp = std::log(std::abs(amplitude));
  const LogNumber numerator = lq_norm_log(
      [&](const Point& y) {
        const LogNumber v = apply_indicator_log(t, ball, y, spec);
        return LogNumber::from_log(log_amp + v.log_magnitude());
      },
      annulus, 2.0, spec);
  const double log_u_norm = log_amp + 0.5 * gamma_log(ball, spec).log_magnitude();

  DaviesGaffneyCheck out;
  out.lhs_log = numerator.log_magnitude() - log_u_norm;
  out.rhs_log_with_c1 = interpolated_bound_log(2.0, t, set_distance(ball, annulus)).log_magnitude();
  return out;
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::fails_restricted: return "fails_restricted";
    case Regime::holds_unrestricted: return "holds_unrestricted";
    case Regime::conjectured_extension: return "conjectured_extension";
    case Regime::unknown: return "unknown";
  }
  return "unknown";
}

RegimeCell classify_regime(double p, double q, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t must be positive and finite");
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  if (!(q > p)) throw DomainError("need p < q");
  if (!std::isfinite(q)) throw DomainError("q must be finite");

  const TimeParam time(t);
  RegimeCell cell;
  cell.p = p;
  cell.q = q;
  cell.t = t;
  cell.t_star = failure_threshold(p, q);
  const double e2t = time.decay() * time.decay();
  cell.p_nelson = 1.0 + (q - 1.0) * e2t;

  const bool fails = t < cell.t_star;
  const bool holds = q == 2.0 && p > nelson_min_p(time) && p <= 2.0;
  const bool conjectured = q != 2.0 && p > 1.0 && p > cell.p_nelson;
  cell.overlap = fails && holds;

  if (fails) {
    cell.regime = Regime::fails_restricted;
  } else if (holds) {
    cell.regime = Regime::holds_unrestricted;
  } else if (conjectured) {
    cell.regime = Regime::conjectured_extension;
  } else {
    cell.regime = Regime::unknown;
  }
  return cell;
}

RegimeMap regime_map(std::span<const double> p_grid, std::span<const double> q_grid,
                     std::span<const double> t_grid) {
  RegimeMap map;
  for (double p : p_grid) {
    for (double q : q_grid) {
      for (double t : t_grid) {
        try {
          map.cells.push_back(classify_regime(p, q, t));
        } catch (const DomainError& e) {
          map.skipped.push_back({p, q, t, e.what()});
        }
      }
    }
  }
  return map;
}

}  // namespace ou
