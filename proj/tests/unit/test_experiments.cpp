#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ou/errors.hpp"
#include "ou/experiments.hpp"
#include "ou/measure.hpp"
#include "oracle.hpp"

using ou::Annulus;
using ou::Ball;
using ou::Point;
using ou::QuadratureSpec;
using ou::Regime;
using ou::TimeParam;

namespace {

// log (int_{C_k(B)} (e^{tL} 1_B)^q dgamma)^{1/q} in one dimension.
double lhs_oracle(double t, double q, const Ball& b, int k) {
  const long double c = b.center()[0];
  const long double a = c - b.radius();
  const long double bb = c + b.radius();
  const Annulus ring(b, k);
  auto integrand = [&](long double y) {
    return std::pow(oracle::semigroup_indicator(t, a, bb, y), static_cast<long double>(q)) *
           oracle::gauss_density(y);
  };
  const long double lo = ring.inner_radius();
  const long double hi = ring.outer_radius();
  const long double sum = oracle::simpson(integrand, c - hi, c - lo, 4000) +
                          oracle::simpson(integrand, c + lo, c + hi, 4000);
  return static_cast<double>(std::log(sum) / q);
}

std::vector<double> default_grid() { return {4.0, 6.0, 8.0, 10.0, 12.0}; }

}  // namespace

TEST(LeastSquares, RecoversExactLine) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(-0.75 * v + 2.5);
  const auto fit = ou::least_squares_fit(x, y);
  EXPECT_NEAR(fit.slope, -0.75, 1e-14);
  EXPECT_NEAR(fit.intercept, 2.5, 1e-14);
  EXPECT_THROW(ou::least_squares_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), ou::DomainError);
  EXPECT_THROW(ou::least_squares_fit(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}),
               ou::DomainError);
}

TEST(OffDiagLhs, Preconditions) {
  const QuadratureSpec spec;
  const TimeParam t(0.5);
  EXPECT_THROW(ou::offdiag_lhs_log(t, 2.0, Ball(Point{8.0}, 0.1), 1, spec), ou::DomainError);
  EXPECT_THROW(ou::offdiag_lhs_log(t, 2.0, ou::make_maximal_admissible_ball(Point{3.0}), 2, spec),
               ou::DomainError);
  EXPECT_THROW(ou::offdiag_lhs_log(t, 2.0, ou::make_maximal_admissible_ball(Point{8.0}), 0, spec),
               ou::DomainError);
}

TEST(OffDiagLhs, MatchesSimpsonOracle) {
  const QuadratureSpec spec;
  for (double c : {4.0, 8.0, 12.0}) {
    for (int k : {1, 2}) {
      for (double q : {2.0, 3.0}) {
        const Ball b = ou::make_maximal_admissible_ball(Point{c});
        const double got = ou::offdiag_lhs_log(TimeParam(0.5), q, b, k, spec).log_magnitude();
        const double want = lhs_oracle(0.5, q, b, k);
        EXPECT_NEAR(got, want, 1e-7) << "c=" << c << " k=" << k << " q=" << q;
      }
    }
  }
}

TEST(OffDiagLhs, StaysAboveLemmaBoundWithStableConstant) {
  const QuadratureSpec spec;
  const TimeParam t(0.5);
  std::vector<double> kappa;
  for (double c : default_grid()) {
    const Ball b = ou::make_maximal_admissible_ball(Point{c});
    kappa.push_back(ou::offdiag_lhs_log(t, 2.0, b, 1, spec).log_magnitude() -
                    ou::lemma_lower_bound_log(t, 2.0, 1, c).log_magnitude());
  }
  const double lowest = *std::min_element(kappa.begin(), kappa.end());
  EXPECT_GE(lowest, kappa.back() - 2.0);
  EXPECT_LT(*std::max_element(kappa.begin(), kappa.end()) - lowest, 2.0);
}

TEST(OffDiagLhs, NormalizedMeansIncreaseWithQ) {
  const QuadratureSpec spec;
  const Ball b = ou::make_maximal_admissible_ball(Point{6.0});
  const double log_ring = ou::gamma_log(Annulus(b, 1), spec).log_magnitude();
  double prev = -INFINITY;
  for (double q : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    const double mean = ou::offdiag_lhs_log(TimeParam(0.8), q, b, 1, spec).log_magnitude() - log_ring / q;
    EXPECT_GE(mean, prev - 1e-10) << q;
    prev = mean;
  }
}

TEST(OffDiagLhs, LongTimeLimitIsConstant) {
  const QuadratureSpec spec;
  const Ball b = ou::make_maximal_admissible_ball(Point{4.0});
  const double q = 2.0;
  const double got = ou::offdiag_lhs_log(TimeParam(40.0), q, b, 1, spec).log_magnitude();
  const double want = ou::gamma_log(b).log_magnitude() + ou::gamma_log(Annulus(b, 1)).log_magnitude() / q;
  EXPECT_NEAR(got, want, 1e-8);
}

TEST(ImpliedConstant, GrowsAtThePredictedRate) {
  const QuadratureSpec spec;
  const ou::OffDiagHypothesis hyp;
  const TimeParam t(0.5);
  const Ball small = ou::make_maximal_admissible_ball(Point{4.0});
  const Ball large = ou::make_maximal_admissible_ball(Point{12.0});
  const double diff = ou::implied_constant_log(hyp, t, large, 1, spec).log_magnitude() -
                      ou::implied_constant_log(hyp, t, small, 1, spec).log_magnitude();
  EXPECT_NEAR(diff, ou::blowup_slope(1.0, 2.0, t) * (144.0 - 16.0), 1.0);
}

TEST(Sweep, ReproducesBlowupSlope) {
  const auto grid = default_grid();
  const auto r = ou::sweep_blowup({}, TimeParam(0.5), 1, 1, grid, {});
  ASSERT_TRUE(r.complete) << r.failure;
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_NEAR(r.predicted_slope, 0.255081337596290871, 1e-15);
  EXPECT_LT(r.slope_rel_error, 0.15);
}

TEST(Sweep, SlopeTurnsNegativePastThreshold) {
  const auto grid = default_grid();
  EXPECT_LT(ou::sweep_blowup({}, TimeParam(1.5), 1, 1, grid, {}).fitted_slope, 0.0);
  EXPECT_LT(std::abs(ou::sweep_blowup({}, TimeParam(std::log(3.0)), 1, 1, grid, {}).fitted_slope), 0.02);
}

TEST(Sweep, PlanarSlopeMatchesPrediction) {
  const auto grid = default_grid();
  const auto r = ou::sweep_blowup({}, TimeParam(0.5), 1, 2, grid, {});
  ASSERT_TRUE(r.complete) << r.failure;
  EXPECT_LT(r.slope_rel_error, 0.15);
}

TEST(Sweep, RowsSortedAndDeterministic) {
  const std::vector<double> grid{10.0, 4.0, 8.0, 6.0};
  const auto parallel = ou::sweep_blowup({}, TimeParam(0.7), 1, 1, grid, {}, true);
  const auto serial = ou::sweep_blowup({}, TimeParam(0.7), 1, 1, grid, {}, false);
  ASSERT_EQ(parallel.rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(parallel.rows[i].cb_norm, 4.0 + 2.0 * i);
    EXPECT_EQ(parallel.rows[i].log_implied_constant, serial.rows[i].log_implied_constant);
    EXPECT_EQ(parallel.rows[i].log_lhs, serial.rows[i].log_lhs);
  }
  EXPECT_EQ(parallel.fitted_slope, serial.fitted_slope);
}

TEST(Sweep, RejectsBadGrids) {
  const TimeParam t(0.5);
  EXPECT_THROW(ou::sweep_blowup({}, t, 1, 1, std::vector<double>{4, 6, 8}, {}), ou::DomainError);
  EXPECT_THROW(ou::sweep_blowup({}, t, 2, 1, std::vector<double>{3, 6, 8, 10}, {}), ou::DomainError);
  EXPECT_THROW(ou::sweep_blowup({}, t, 1, 1, std::vector<double>{4, 4, 8, 10}, {}), ou::DomainError);
  EXPECT_THROW(ou::sweep_blowup({}, t, 1, 4, default_grid(), {}), ou::DomainError);
}

TEST(Sweep, QuadratureFailureLeavesPartialResult) {
  QuadratureSpec spec;
  spec.order = 2;
  spec.tol = 1e-15;
  spec.max_refinements = 1;
  const auto r = ou::sweep_blowup({}, TimeParam(0.5), 1, 1, default_grid(), spec);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.failure.empty());
  EXPECT_LT(r.rows.size(), 5u);
  EXPECT_TRUE(std::isnan(r.fitted_slope));
}

TEST(Hypercontractivity, BoundaryExponentGivesRatioOne) {
  for (double t : {0.3, 1.0}) {
    for (double lambda : {-1.5, 2.0}) {
      const TimeParam tp(t);
      const auto h = ou::hypercontractivity_check(tp, ou::nelson_min_p(tp), lambda, {});
      EXPECT_NEAR(h.ratio_closed_form, 1.0, 1e-15);
      EXPECT_NEAR(h.ratio_numeric, 1.0, 1e-9);
    }
  }
}

TEST(Hypercontractivity, ContractionFlipsAtNelsonExponent) {
  const TimeParam t(0.5);
  const auto above = ou::hypercontractivity_check(t, 1.8, 2.0, {});
  EXPECT_LT(above.ratio_numeric, 1.0);
  EXPECT_NEAR(above.ratio_numeric, above.ratio_closed_form, 1e-6 * above.ratio_closed_form);
  double prev = 1.0;
  for (double lambda : {1.0, 2.0, 3.0}) {
    const auto below = ou::hypercontractivity_check(t, 1.1, lambda, {});
    EXPECT_GT(below.ratio_numeric, prev);
    EXPECT_NEAR(below.ratio_numeric, below.ratio_closed_form, 1e-6 * below.ratio_closed_form);
    prev = below.ratio_numeric;
  }
  EXPECT_THROW(ou::hypercontractivity_check(t, 1.0, 1.0, {}), ou::DomainError);
}

TEST(DaviesGaffneyCheck, AmplitudeInvariantAndFinite) {
  const QuadratureSpec spec;
  const Ball b = ou::make_maximal_admissible_ball(Point{4.0});
  const auto unit = ou::davies_gaffney_check(TimeParam(1.0), b, 2, spec);
  const auto scaled = ou::davies_gaffney_check(TimeParam(1.0), b, 2, spec, -37.5);
  EXPECT_TRUE(std::isfinite(unit.lhs_log));
  EXPECT_NEAR(unit.lhs_log, scaled.lhs_log, 1e-12);
  EXPECT_EQ(unit.rhs_log_with_c1, scaled.rhs_log_with_c1);
  EXPECT_THROW(ou::davies_gaffney_check(TimeParam(1.0), b, 0, spec), ou::DomainError);
  EXPECT_THROW(ou::davies_gaffney_check(TimeParam(1.0), b, 1, spec, 0.0), ou::DomainError);
}

TEST(Regime, ClassifiesExampleCells) {
  const auto fails = ou::classify_regime(1.5, 2.0, 0.2);
  EXPECT_EQ(fails.regime, Regime::fails_restricted);
  EXPECT_NEAR(fails.t_star, 0.336472236621212931, 1e-14);
  EXPECT_EQ(ou::classify_regime(1.5, 2.0, 1.5).regime, Regime::holds_unrestricted);
  EXPECT_EQ(ou::classify_regime(1.05, 2.0, 1.2).regime, Regime::unknown);
  const auto ext = ou::classify_regime(2.5, 3.0, 3.0);
  EXPECT_EQ(ext.regime, Regime::conjectured_extension);
  EXPECT_NEAR(ext.p_nelson, 1.0 + 2.0 * std::exp(-6.0), 1e-15);
  EXPECT_THROW(ou::classify_regime(2.0, 2.0, 1.0), ou::DomainError);
  EXPECT_THROW(ou::classify_regime(1.0, 2.0, 0.0), ou::DomainError);
}

TEST(Regime, MapPartitionInvariants) {
  std::vector<double> ps, qs{2.0, 3.0, 1.5}, ts;
  for (int i = 0; i < 10; ++i) ps.push_back(1.05 + 0.1 * i);
  for (int i = 0; i < 20; ++i) ts.push_back(0.1 + 0.1 * i);
  const auto map = ou::regime_map(ps, qs, ts);
  EXPECT_EQ(map.cells.size() + map.skipped.size(), ps.size() * qs.size() * ts.size());
  EXPECT_FALSE(map.skipped.empty());
  for (const auto& s : map.skipped) EXPECT_FALSE(s.reason.empty());
  for (const auto& c : map.cells) {
    EXPECT_FALSE(c.overlap);
    EXPECT_EQ(c.regime == Regime::fails_restricted, c.t < c.t_star);
    if (c.regime == Regime::holds_unrestricted) {
      EXPECT_EQ(c.q, 2.0);
      EXPECT_GT(c.p, 1.0 + std::exp(-2.0 * c.t));
      EXPECT_LE(c.p, 2.0);
    }
  }
}
