#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ou/errors.hpp"
#include "ou/estimates.hpp"

using ou::TimeParam;

TEST(DaviesGaffney, FrozenValueAndDomain) {
  EXPECT_NEAR(ou::davies_gaffney_bound(TimeParam(1.0), 2.0), 0.0676676416183063459, 1e-16);
  EXPECT_NEAR(ou::davies_gaffney_bound(TimeParam(1.0), 2.0, {3.0}), 3 * 0.0676676416183063459, 1e-15);
  EXPECT_THROW(ou::davies_gaffney_bound(TimeParam(1.0), 0.0), ou::DomainError);
  EXPECT_THROW(ou::davies_gaffney_bound(TimeParam(1.0), 1.0, {0.0}), ou::DomainError);
}

TEST(DaviesGaffney, DecreasingTail) {
  const TimeParam t(0.7);
  double prev = INFINITY;
  for (double d = 1.0; d < 20.0; d += 0.5) {
    const double v = ou::davies_gaffney_bound(t, d);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_EQ(ou::davies_gaffney_bound(t, 1e3), 0.0);
}

TEST(DaviesGaffney, ParabolicScaling) {
  for (double lambda : {0.5, 2.0, 3.7}) {
    const double t = 0.8;
    const double d = 1.3;
    EXPECT_NEAR(ou::davies_gaffney_bound(TimeParam(lambda * lambda * t), lambda * d),
                lambda * ou::davies_gaffney_bound(TimeParam(t), d), 1e-15);
  }
}

TEST(Nelson, FrozenValueAndLimits) {
  EXPECT_NEAR(ou::nelson_min_p(TimeParam(0.5)), 1.36787944117144232, 1e-15);
  EXPECT_NEAR(ou::nelson_min_p(TimeParam(40.0)), 1.0, 1e-15);
  EXPECT_NEAR(ou::nelson_min_p(TimeParam(1e-9)), 2.0, 1e-8);
}

TEST(Nelson, InverseRelation) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(1.001, 1.999);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng);
    const double t = -0.5 * std::log(p - 1);
    EXPECT_NEAR(ou::nelson_min_p(TimeParam(t)), p, 1e-12);
  }
}

TEST(Delta, FrozenValuesAndRange) {
  EXPECT_EQ(ou::delta_exponent(2.0, TimeParam(0.5)), 0.0);
  EXPECT_NEAR(ou::delta_exponent(1.5, TimeParam(1.0)), 0.437678428499777101, 1e-14);
  const TimeParam t(0.5);
  EXPECT_GT(ou::delta_exponent(ou::nelson_min_p(t) + 1e-9, t), 0.999);
  EXPECT_THROW(ou::delta_exponent(ou::nelson_min_p(t), t), ou::DomainError);
  EXPECT_THROW(ou::delta_exponent(2.1, t), ou::DomainError);
}

TEST(Interpolated, FrozenValueAndEndpoint) {
  EXPECT_NEAR(ou::interpolated_bound_log(1.5, TimeParam(1.0), 2.0).log_magnitude(), -1.51441475485386300,
              1e-13);
  for (double t : {0.3, 1.0, 2.5}) {
    for (double d : {0.5, 2.0, 7.0}) {
      EXPECT_EQ(ou::interpolated_bound_log(2.0, TimeParam(t), d).log_magnitude(),
                std::log(ou::davies_gaffney_bound(TimeParam(t), d)));
    }
  }
}

TEST(Interpolated, LargerPGivesSmallerBoundBelowOne) {
  const TimeParam t(1.0);
  const double d = 2.0;  // bound < 1 here
  double prev = INFINITY;
  for (double p = 1.2; p <= 2.0; p += 0.1) {
    const double v = ou::interpolated_bound_log(p, t, d).log_magnitude();
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(FailureThreshold, LogThreeAndLimits) {
  EXPECT_NEAR(ou::failure_threshold(1.0, 2.0), std::log(3.0), 1e-12);
  EXPECT_NEAR(ou::failure_threshold(1.5, 2.0), 0.336472236621212931, 1e-14);
  EXPECT_GT(ou::failure_threshold(1.999999, 2.0), 0.0);
  EXPECT_LT(ou::failure_threshold(1.999999, 2.0), 1e-6);
  EXPECT_THROW(ou::failure_threshold(2.0, 2.0), ou::DomainError);
  EXPECT_THROW(ou::failure_threshold(0.5, 2.0), ou::DomainError);
  EXPECT_THROW(ou::failure_threshold(1.0, INFINITY), ou::DomainError);
}

TEST(FailureThreshold, IncreasingInTheExponentGap) {
  double prev = 0.0;
  for (double p = 1.9; p >= 1.0; p -= 0.1) {
    const double ts = ou::failure_threshold(p, 2.0);
    EXPECT_GT(ts, prev);
    prev = ts;
  }
}

TEST(BlowupSlope, FrozenValueAndZeroAtThreshold) {
  EXPECT_NEAR(ou::blowup_slope(1.0, 2.0, TimeParam(0.5)), 0.255081337596290871, 1e-15);
  for (auto [p, q] : {std::pair{1.0, 2.0}, {1.5, 2.0}, {1.2, 5.0}}) {
    EXPECT_NEAR(ou::blowup_slope(p, q, TimeParam(ou::failure_threshold(p, q))), 0.0, 1e-12);
  }
}

TEST(BlowupSlope, SignMatchesThresholdComparison) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> up(1.0, 4.0);
  std::uniform_real_distribution<double> ugap(0.01, 4.0);
  std::uniform_real_distribution<double> ut(0.01, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = up(rng);
    const double q = p + ugap(rng);
    const double t = ut(rng);
    const double gap = ou::failure_threshold(p, q) - t;
    if (std::abs(gap) < 1e-12) continue;
    EXPECT_EQ(ou::blowup_slope(p, q, TimeParam(t)) > 0, gap > 0);
  }
}

TEST(LemmaBound, FrozenValueAndMonotoneInQ) {
  EXPECT_NEAR(ou::lemma_lower_bound_log(TimeParam(0.5), 2.0, 1, 8.0).log_magnitude(),
              -50.7939567063571382, 1e-12);
  double prev = -INFINITY;
  for (double q : {1.5, 2.0, 3.0, 6.0}) {
    const double v = ou::lemma_lower_bound_log(TimeParam(0.5), q, 2, 6.0).log_magnitude();
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(ou::lemma_lower_bound_log(TimeParam(0.5), 1.0, 1, 8.0), ou::DomainError);
  EXPECT_THROW(ou::lemma_lower_bound_log(TimeParam(0.5), 2.0, 1, 1.0), ou::DomainError);
}

TEST(LemmaBound, DifferenceAlgebra) {
  // Doubling |c_B| adds -n(1+1/q) log 2 + 3|c_B|^2 (2/(e^t+1) - 1 - 1/q).
  const TimeParam t(0.9);
  const double q = 3.0;
  const int n = 2;
  const double c = 5.0;
  const double diff = ou::lemma_lower_bound_log(t, q, n, 2 * c).log_magnitude() -
                      ou::lemma_lower_bound_log(t, q, n, c).log_magnitude();
  const double expected = -n * (1 + 1 / q) * std::log(2.0) +
                          3 * c * c * (2 / (std::exp(t.value()) + 1) - 1 - 1 / q);
  EXPECT_NEAR(diff, expected, 1e-12);
}

TEST(Hypothesis, Validation) {
  EXPECT_NO_THROW(ou::OffDiagHypothesis{}.validate());
  EXPECT_THROW((ou::OffDiagHypothesis{2.0, 2.0, 0.0, 0.5}.validate()), ou::DomainError);
  EXPECT_THROW((ou::OffDiagHypothesis{1.0, 2.0, -1.0, 0.5}.validate()), ou::DomainError);
  EXPECT_THROW((ou::OffDiagHypothesis{1.0, 2.0, 0.0, 0.0}.validate()), ou::DomainError);
  EXPECT_THROW((ou::McIntoshConstant{-1.0}.validate()), ou::DomainError);
}
