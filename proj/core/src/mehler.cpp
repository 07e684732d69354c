#include "ou/mehler.hpp"

#include <cmath>

#include "ou/errors.hpp"
#include "ou/special.hpp"

namespace ou {

namespace {

void require_same_dim(const Point& x, const Point& y, const char* where) {
  if (x.dim() != y.dim()) throw DomainError(std::string(where) + ": dimension mismatch");
}

// Image of a region under z -> (z - shift) / scale.
Region pull_back(const Region& region, const Point& shift, double scale) {
  auto map_ball = [&](const Ball& b) {
    return Ball(axpy(Point::origin(b.dim()), 1.0 / scale, axpy(b.center(), -1.0, shift)),
                b.radius() / scale);
  };
  if (const auto* b = std::get_if<Ball>(&region)) return map_ball(*b);
  if (const auto* a = std::get_if<Annulus>(&region)) return Annulus(map_ball(a->base()), a->k());
  return region;
}

}  // namespace

TimeParam::TimeParam(double t) : t_(t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("TimeParam: t must be positive and finite");
  decay_ = std::exp(-t);
  spread_ = -std::expm1(-2.0 * t);
  log_spread_ = std::log(spread_);
}

LogNumber mehler_log(const TimeParam& t, const Point& x, const Point& y) {
  require_same_dim(x, y, "mehler_log");
  const double n = static_cast<double>(x.dim());
  const double a = t.decay();
  const double log_m = -0.5 * n * t.log_spread() - a * a * distance_squared(x, y) / t.spread() +
                       2.0 * a * dot(x, y) / (1.0 + a);
  return LogNumber::from_log(log_m);
}

LogNumber apply_kernel_log(const TimeParam& t, const LogIntegrand& f, const Region& support,
                           const Point& y, const QuadratureSpec& spec) {
  if (region_dim(support) != y.dim()) throw DomainError("apply_kernel_log: dimension mismatch");
  return integrate_gamma_log(
      [&](const Point& x) {
        const LogNumber v = f(x);
        return v.is_zero() ? v : v * mehler_log(t, x, y);
      },
      support, spec);
}

LogNumber apply_indicator_log(const TimeParam& t, const Region& set, const Point& y,
                              const QuadratureSpec& spec) {
  if (region_dim(set) != y.dim()) throw DomainError("apply_indicator_log: dimension mismatch");
  return integrate_gamma_log([&](const Point& x) { return mehler_log(t, x, y); }, set, spec);
}

LogNumber apply_indicator_closed_form_log(const TimeParam& t, const Ball& interval,
                                          const Point& y) {
  if (interval.dim() != 1 || y.dim() != 1) {
    throw DomainError("apply_indicator_closed_form_log: only n = 1 has a closed form");
  }
  const double s = std::sqrt(t.spread());
  const double shift = t.decay() * y[0];
  const double a = interval.center()[0] - interval.radius();
  const double b = interval.center()[0] + interval.radius();
  return gamma_interval_log((a - shift) / s, (b - shift) / s);
}

double apply_via_translation(const TimeParam& t, const std::function<double(const Point&)>& f,
                             const Point& x, const QuadratureSpec& spec, const Region& support) {
  if (region_dim(support) != x.dim()) throw DomainError("apply_via_translation: dimension mismatch");
  const double s = std::sqrt(t.spread());
  const Point mean = axpy(Point::origin(x.dim()), t.decay(), x);
  const Region domain = pull_back(support, mean, s);
  const LogNumber v = integrate_gamma_log(
      [&](const Point& u) { return LogNumber::from_value(f(axpy(mean, s, u))); }, domain, spec);
  return v.value();
}

double apply_via_translation(const TimeParam& t, const std::function<double(const Point&)>& f,
                             const Point& x, const QuadratureSpec& spec) {
  return apply_via_translation(t, f, x, spec, FullSpace{x.dim()});
}

}  // namespace ou
