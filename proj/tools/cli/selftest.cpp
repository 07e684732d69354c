#include "cli/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cli/csv_io.hpp"
#include "ou/errors.hpp"
#include "ou/estimates.hpp"
#include "ou/experiments.hpp"
#include "ou/measure.hpp"
#include "ou/mehler.hpp"
#include "ou/special.hpp"

namespace ou::cli {

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::string describe(double worst, double limit) {
  std::ostringstream os;
  os << "worst " << worst << " (limit " << limit << ")";
  return os.str();
}

class Suite {
 public:
  Suite(std::uint64_t seed, QuadratureSpec spec) : rng_(seed), spec_(spec) {}

  void check(const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckOutcome out{name, true, {}};
    try {
      out.detail = body(out.passed);
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail = std::string("exception: ") + e.what();
    }
    outcomes_.push_back(std::move(out));
  }

  std::mt19937_64& rng() { return rng_; }
  const QuadratureSpec& spec() const { return spec_; }
  std::vector<CheckOutcome> take() { return std::move(outcomes_); }

 private:
  std::mt19937_64 rng_;
  QuadratureSpec spec_;
  std::vector<CheckOutcome> outcomes_;
};

void log_domain_checks(Suite& s) {
  s.check("log_sum_exp.extreme_inputs", [&](bool& ok) {
    std::uniform_real_distribution<double> u(-1700.0, 1700.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> terms(50);
      for (double& v : terms) v = u(s.rng());
      LogAccumulator acc;
      for (double v : terms) acc.add_log(v);
      const double a = log_sum_exp(terms);
      const double b = acc.log_result_positive();
      if (!std::isfinite(a) || !std::isfinite(b)) ok = false;
      worst = std::max(worst, std::abs(a - b));
    }
    ok = ok && worst < 1e-12;
    return describe(worst, 1e-12);
  });
}

void geometry_checks(Suite& s) {
  const QuadratureSpec& spec = s.spec();
  s.check("gamma.monotone_nested_balls", [&](bool& ok) {
    for (int n = 1; n <= 3; ++n) {
      const Point c = Point::on_axis(n, 1.3);
      double prev = kNegInf;
      for (double r : {0.1, 0.3, 0.9, 2.0}) {
        const double g = gamma_log(Ball(c, r), spec).log_magnitude();
        if (!(g > prev)) ok = false;
        prev = g;
      }
    }
    return std::string();
  });
  s.check("gamma.annulus_additivity", [&](bool& ok) {
    double worst = 0.0;
    for (int n = 1; n <= 2; ++n) {
      const Ball base = make_maximal_admissible_ball(Point::on_axis(n, 2.5));
      for (int k = 1; k <= 4; ++k) {
        const LogNumber outer = gamma_log(base.dilate(std::ldexp(1.0, k + 1)), spec);
        const LogNumber inner = gamma_log(base.dilate(std::ldexp(1.0, k)), spec);
        const LogNumber shell = gamma_log(Annulus(base, k), spec);
        worst = std::max(worst, rel_err((inner + shell).value(), outer.value()));
      }
    }
    ok = worst <= 2.0 * spec.tol;
    return describe(worst, 2.0 * spec.tol);
  });
  s.check("gamma.erf_oracle_n1", [&](bool& ok) {
    // Long double keeps the erf difference well conditioned for |a| <= 3.
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double a = u(s.rng());
      const double w = 0.5 * std::abs(u(s.rng())) + 0.05;
      const long double hi = static_cast<long double>(a) + w;
      const double want = static_cast<double>(0.5L * (std::erf(hi) - std::erf((long double)a)));
      const double got = gamma_log(Ball(Point{a + 0.5 * w}, 0.5 * w), spec).value();
      worst = std::max(worst, rel_err(got, want));
    }
    ok = worst <= 1e-10;
    return describe(worst, 1e-10);
  });
  s.check("set_distance.increasing_in_k", [&](bool& ok) {
    const Ball b = make_maximal_admissible_ball(Point{5.0, 1.0});
    double prev = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double d = set_distance(b, Annulus(b, k));
      if (!(d > prev)) ok = false;
      prev = d;
    }
    return std::string();
  });
}

void quadrature_checks(Suite& s) {
  s.check("gauss_hermite.exact_monomials", [&](bool& ok) {
    double worst = 0.0;
    for (int deg = 0; deg <= 9; ++deg) {
      const LogNumber v = integrate_gamma_fixed(
          [deg](const Point& x) { return LogNumber::from_value(std::pow(x[0], deg)); },
          FullSpace{1}, 5);
      // E x^{2j} = (2j-1)!! / 2^j under gamma; odd moments vanish.
      double want = 0.0;
      if (deg % 2 == 0) {
        want = 1.0;
        for (int j = 1; j < deg; j += 2) want *= j / 2.0;
      }
      worst = std::max(worst, deg % 2 ? std::abs(v.value()) : rel_err(v.value(), want));
    }
    ok = worst <= 1e-12;
    return describe(worst, 1e-12);
  });
}

void mehler_checks(Suite& s) {
  const QuadratureSpec& spec = s.spec();
  s.check("mehler.bitwise_symmetry", [&](bool& ok) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> ut(1e-4, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const TimeParam t(ut(s.rng()));
      const Point x{u(s.rng()), u(s.rng())};
      const Point y{u(s.rng()), u(s.rng())};
      if (mehler_log(t, x, y).log_magnitude() != mehler_log(t, y, x).log_magnitude()) ok = false;
    }
    return std::string();
  });
  s.check("mehler.conservation", [&](bool& ok) {
    double worst = 0.0;
    for (double t : {0.1, 1.0, 5.0}) {
      for (double x : {0.0, 1.5, 3.0}) {
        for (int n = 1; n <= 2; ++n) {
          const TimeParam tp(t);
          const Point px = Point::on_axis(n, x);
          const LogNumber v = integrate_gamma_log(
              [&](const Point& y) { return mehler_log(tp, px, y); }, FullSpace{std::size_t(n)},
              spec);
          worst = std::max(worst, std::abs(std::expm1(v.log_magnitude())));
        }
      }
    }
    ok = worst <= 1e-8;
    return describe(worst, 1e-8);
  });
  s.check("mehler.semigroup", [&](bool& ok) {
    double worst = 0.0;
    for (double t : {0.3, 1.0}) {
      for (double r : {0.3, 1.0}) {
        for (double x : {-2.0, 0.5, 2.0}) {
          for (double y : {-1.0, 0.0, 2.0}) {
            const TimeParam tt(t), ts(r), sum(t + r);
            const Point px{x}, py{y};
            const LogNumber v = integrate_gamma_log(
                [&](const Point& z) { return mehler_log(tt, px, z) * mehler_log(ts, z, py); },
                FullSpace{1}, spec);
            const double want = mehler_log(sum, px, py).log_magnitude();
            worst = std::max(worst, std::abs(std::expm1(v.log_magnitude() - want)));
          }
        }
      }
    }
    ok = worst <= 1e-6;
    return describe(worst, 1e-6);
  });
  s.check("mehler.kernel_vs_translation_vs_erf", [&](bool& ok) {
    std::uniform_real_distribution<double> ut(0.05, 3.0), uc(-3.0, 3.0), ur(0.05, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const TimeParam t(ut(s.rng()));
      const Ball e(Point{uc(s.rng())}, ur(s.rng()));
      const Point y{uc(s.rng())};
      const double kernel = apply_indicator_log(t, e, y, spec).log_magnitude();
      const double cf = apply_indicator_closed_form_log(t, e, y).log_magnitude();
      const double tr =
          std::log(apply_via_translation(t, [](const Point&) { return 1.0; }, y, spec, e));
      worst = std::max({worst, std::abs(std::expm1(kernel - cf)), std::abs(std::expm1(tr - cf))});
    }
    ok = worst <= 1e-8;
    return describe(worst, 1e-8);
  });
  s.check("mehler.hermite_eigenfunctions", [&](bool& ok) {
    double worst = 0.0;
    for (double t : {0.3, 1.0}) {
      for (int k = 0; k <= 5; ++k) {
        for (double x : {-1.7, -0.4, 0.3, 1.1, 2.2}) {
          const TimeParam tp(t);
          const double got = apply_via_translation(
              tp, [k](const Point& z) { return hermite_h(k, z[0]); }, Point{x}, spec);
          const double want = std::exp(-k * t) * hermite_h(k, x);
          worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), 1e-3));
        }
      }
    }
    ok = worst <= 1e-6;
    return describe(worst, 1e-6);
  });
}

void estimate_checks(Suite& s) {
  s.check("estimates.delta_range", [&](bool& ok) {
    std::uniform_real_distribution<double> ut(1e-3, 5.0), uf(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const TimeParam t(ut(s.rng()));
      const double lo = nelson_min_p(t);
      const double p = lo + (2.0 - lo) * (1.0 - uf(s.rng()));
      if (!(p > lo)) continue;
      const double d = delta_exponent(p, t);
      if (!(d >= 0.0 && d < 1.0)) ok = false;
    }
    return std::string();
  });
  s.check("estimates.threshold_slope_sign", [&](bool& ok) {
    std::uniform_real_distribution<double> up(1.0, 4.0), ugap(1e-3, 4.0), ut(1e-3, 4.0);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const double p = up(s.rng());
      const double q = p + ugap(s.rng());
      const double t = ut(s.rng());
      const double slope = blowup_slope(p, q, TimeParam(t));
      const double margin = failure_threshold(p, q) - t;
      // Skip samples whose sign is decided by rounding.
      if (std::abs(margin) < 1e-12) continue;
      if ((slope > 0.0) != (margin > 0.0)) ++mismatches;
    }
    ok = mismatches == 0;
    return std::to_string(mismatches) + " mismatches";
  });
  s.check("estimates.threshold_monotone_in_gap", [&](bool& ok) {
    double last = -1.0;
    for (double gap = 0.01; gap < 0.99; gap += 0.01) {
      const double v = failure_threshold(1.0, 1.0 / (1.0 - gap));
      if (!(v > last)) ok = false;
      last = v;
    }
    return std::string();
  });
  s.check("estimates.interpolation_at_p2", [&](bool& ok) {
    for (double t : {0.2, 1.0, 3.0}) {
      for (double d : {0.1, 1.0, 4.0}) {
        const TimeParam tp(t);
        if (interpolated_bound_log(2.0, tp, d).log_magnitude() !=
            std::log(davies_gaffney_bound(tp, d))) {
          ok = false;
        }
      }
    }
    return std::string();
  });
}

void experiment_checks(Suite& s) {
  const QuadratureSpec& spec = s.spec();
  s.check("experiments.slope_fit_exact_model", [&](bool& ok) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const double a = u(s.rng());
      const double b = u(s.rng());
      std::vector<double> xs, ys;
      for (double c : {4.0, 6.0, 8.0, 10.0, 12.0}) {
        xs.push_back(c * c);
        ys.push_back(a * c * c + b);
      }
      worst = std::max(worst, std::abs(least_squares_fit(xs, ys).slope - a));
    }
    ok = worst <= 1e-10;
    return describe(worst, 1e-10);
  });
  s.check("experiments.sweep_deterministic", [&](bool& ok) {
    const std::vector<double> grid{4, 6, 8, 10, 12};
    const OffDiagHypothesis hyp{1.0, 2.0, 0.0, 0.5};
    const SweepResult a = sweep_blowup(hyp, TimeParam(0.5), 1, 1, grid, spec, true);
    const SweepResult b = sweep_blowup(hyp, TimeParam(0.5), 1, 1, grid, spec, false);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      if (format_double(a.rows[i].log_implied_constant) !=
          format_double(b.rows[i].log_implied_constant)) {
        ok = false;
      }
    }
    ok = ok && a.rows.size() == grid.size() && a.fitted_slope == b.fitted_slope;
    return std::string();
  });
  s.check("experiments.regime_partition", [&](bool& ok) {
    std::vector<double> ps, ts;
    for (int i = 0; i < 10; ++i) ps.push_back(1.05 + 0.1 * i);
    for (int i = 0; i < 20; ++i) ts.push_back(0.1 + 0.1 * i);
    const std::vector<double> qs{2.0};
    const RegimeMap map = regime_map(ps, qs, ts);
    for (const RegimeCell& c : map.cells) {
      if (c.overlap) ok = false;
      if ((c.regime == Regime::fails_restricted) != (c.t < c.t_star)) ok = false;
    }
    ok = ok && map.cells.size() == 200;
    return std::to_string(map.cells.size()) + " cells";
  });
  s.check("experiments.hypercontractivity_agreement", [&](bool& ok) {
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double t : {0.3, 1.0}) {
        for (double p : {1.2, 1.5, 2.0}) {
          const auto h = hypercontractivity_check(TimeParam(t), p, lambda, spec);
          worst = std::max(worst, rel_err(h.ratio_numeric, h.ratio_closed_form));
        }
      }
    }
    ok = worst <= 1e-6;
    return describe(worst, 1e-6);
  });
}

}  // namespace

std::vector<CheckOutcome> run_selftest(std::uint64_t seed, const QuadratureSpec& spec) {
  Suite suite(seed, spec);
  log_domain_checks(suite);
  geometry_checks(suite);
  quadrature_checks(suite);
  mehler_checks(suite);
  estimate_checks(suite);
  experiment_checks(suite);
  return suite.take();
}

}  // namespace ou::cli
