#include "ou/measure.hpp"

#include "ou/errors.hpp"
#include "ou/special.hpp"

namespace ou {

namespace {

LogNumber gamma_1d(const Region& set) {
  if (const auto* ball = std::get_if<Ball>(&set)) {
    const double c = ball->center()[0];
    const double r = ball->radius();
    return gamma_interval_log(c - r, c + r);
  }
  const auto& annulus = std::get<Annulus>(set);
  const double c = annulus.base().center()[0];
  const double lo = annulus.inner_radius();
  const double hi = annulus.outer_radius();
  if (annulus.k() == 0) return gamma_interval_log(c - hi, c + hi);
  return gamma_interval_log(c - hi, c - lo) + gamma_interval_log(c + lo, c + hi);
}

}  // namespace

LogNumber gamma_log(const Region& set, const QuadratureSpec& spec) {
  const std::size_t n = region_dim(set);
  if (n < 1 || n > kMaxDim) throw DomainError("gamma_log: unsupported dimension");
  if (std::holds_alternative<FullSpace>(set)) return LogNumber::one();
  if (n == 1) return gamma_1d(set);
  return integrate_gamma_log([](const Point&) { return LogNumber::one(); }, set, spec);
}

}  // namespace ou
