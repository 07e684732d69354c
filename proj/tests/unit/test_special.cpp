#include <gtest/gtest.h>

#include <cmath>

#include "ou/errors.hpp"
#include "ou/special.hpp"

TEST(LogErfc, MatchesLibmInTheBulk) {
  for (double x = -5.0; x <= 20.0; x += 0.37) {
    EXPECT_NEAR(ou::log_erfc(x), std::log(std::erfc(x)), 1e-12 * (1 + std::abs(std::log(std::erfc(x)))));
  }
}

TEST(LogErfc, FarTailFrozenValues) {
  // mpmath, 30 digits
  EXPECT_NEAR(ou::log_erfc(5.0), -27.2008895455374344, 1e-12);
  EXPECT_NEAR(ou::log_erfc(26.0), -679.831199763194230, 1e-10);
  EXPECT_NEAR(ou::log_erfc(30.0), -903.974117110643878, 1e-10);
  EXPECT_NEAR(ou::log_erfc(100.0), -10005.1775851226643, 1e-9);
  EXPECT_NEAR(ou::log_erfc(1000.0), -1000007.48012072191, 1e-6);
  EXPECT_NEAR(ou::log_erfc(-3.0), 0.693136135250446810, 1e-15);
  EXPECT_THROW(ou::log_erfc(NAN), ou::DomainError);
}

TEST(GammaInterval, SymmetricAndComplete) {
  EXPECT_NEAR(ou::gamma_interval_log(-INFINITY, INFINITY).log_magnitude(), 0.0, 1e-15);
  EXPECT_NEAR(ou::gamma_interval_log(0.0, INFINITY).log_magnitude(), std::log(0.5), 1e-15);
  EXPECT_NEAR(ou::gamma_interval_log(-2.0, -1.0).log_magnitude(),
              ou::gamma_interval_log(1.0, 2.0).log_magnitude(), 1e-15);
  EXPECT_TRUE(ou::gamma_interval_log(1.0, 1.0).is_zero());
  EXPECT_THROW(ou::gamma_interval_log(2.0, 1.0), ou::DomainError);
}

TEST(GammaInterval, DeepTailFrozenValue) {
  // log gamma([7.9, 8.3]), mpmath
  EXPECT_NEAR(ou::gamma_interval_log(7.9, 8.3).log_magnitude(), -65.7516939820595148, 1e-10);
  EXPECT_TRUE(std::isfinite(ou::gamma_interval_log(40.0, 40.5).log_magnitude()));
}

TEST(Hermite, MatchesStdHermite) {
  for (int k = 0; k <= 10; ++k) {
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
      const double ref = std::hermite(k, x);
      EXPECT_NEAR(ou::hermite_h(k, x), ref, 1e-12 * (1 + std::abs(ref)));
    }
  }
  EXPECT_THROW(ou::hermite_h(-1, 0.0), ou::DomainError);
}
