#pragma once

#include <functional>

#include "ou/geometry.hpp"
#include "ou/log_number.hpp"
#include "ou/quadrature.hpp"

namespace ou {

/// Semigroup time t > 0 together with the derived quantities every kernel
/// evaluation needs.
class TimeParam {
 public:
  explicit TimeParam(double t);

  double value() const noexcept { return t_; }
  // e^{-t}
  double decay() const noexcept { return decay_; }
  // 1 - e^{-2t}, computed through expm1 so it keeps precision for tiny t.
  double spread() const noexcept { return spread_; }
  double log_spread() const noexcept { return log_spread_; }

 private:
  double t_;
  double decay_;
  double spread_;
  double log_spread_;
};

/// log M_t(x, y) for the Mehler kernel of e^{tL} with respect to gamma:
///
///   M_t(x,y) = (1-e^{-2t})^{-n/2} exp(-e^{-2t}|x-y|^2 / (1-e^{-2t}))
///                                 exp(2e^{-t}<x,y> / (1+e^{-t})).
///
/// The value is always positive. Exact symmetry in (x, y) holds bitwise.
LogNumber mehler_log(const TimeParam& t, const Point& x, const Point& y);

/// log of  int_support M_t(x, y) f(x) dgamma(x),  i.e. e^{tL}(1_support f)(y).
LogNumber apply_kernel_log(const TimeParam& t, const LogIntegrand& f, const Region& support,
                           const Point& y, const QuadratureSpec& spec);

/// log e^{tL} 1_E (y) through the kernel.
LogNumber apply_indicator_log(const TimeParam& t, const Region& set, const Point& y,
                              const QuadratureSpec& spec);

/// n = 1 closed form: e^{tL} 1_{[a,b]}(y) = gamma([(a - e^{-t}y)/s, (b - e^{-t}y)/s])
/// with s = sqrt(1 - e^{-2t}).
LogNumber apply_indicator_closed_form_log(const TimeParam& t, const Ball& interval,
                                          const Point& y);

/// e^{tL} f(x) = int f(e^{-t}x + sqrt(1 - e^{-2t}) u) dgamma(u).
///
/// When f vanishes outside `support`, pass it so that the integral runs over
/// the pulled-back region (e^{-t}x + s u in support), which keeps quadrature
/// spectrally accurate for discontinuous f such as indicators.
double apply_via_translation(const TimeParam& t, const std::function<double(const Point&)>& f,
                             const Point& x, const QuadratureSpec& spec,
                             const Region& support);
double apply_via_translation(const TimeParam& t, const std::function<double(const Point&)>& f,
                             const Point& x, const QuadratureSpec& spec);

}  // namespace ou
