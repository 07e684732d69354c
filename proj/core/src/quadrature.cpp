#include "ou/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "ou/errors.hpp"

namespace ou {

namespace {

constexpr double kPi = std::numbers::pi;
// Refuse rules whose node count exceeds this; treated as refinement exhaustion.
constexpr std::size_t kMaxNodes = std::size_t{1} << 24;

QuadratureRule make_gauss_legendre(int m) {
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.log_weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    const double lw = std::log(2.0) - std::log1p(-z * z) - 2.0 * std::log(std::abs(pp));
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.log_weights[i] = lw;
    rule.log_weights[m - 1 - i] = lw;
  }
  return rule;
}

// Orthonormal Hermite polynomials for e^{-x^2} evaluated by the three-term
// recurrence with a running power-of-ten rescale; returns p_m, p_{m-1} and the
// log of the removed scale.
struct HermiteEval {
  double pm;
  double pm1;
  double log_scale;
};

HermiteEval eval_orthonormal_hermite(int m, double x) {
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  double p0 = std::pow(kPi, -0.25);
  double p1 = std::numbers::sqrt2 * x * p0;
  double log_scale = 0.0;
  for (int k = 1; k < m; ++k) {
    const double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(double(k) / (k + 1)) * p0;
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > kBig) {
      p0 /= kBig;
      p1 /= kBig;
      log_scale += log_big;
    }
  }
  return {p1, p0, log_scale};
}

QuadratureRule make_gauss_hermite(int m) {
  QuadratureRule rule;
  if (m == 1) {
    rule.nodes = {0.0};
    rule.log_weights = {0.5 * std::log(kPi)};
    return rule;
  }
  // Golub-Welsch eigenvalues as starting points, then Newton polishing.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("gauss_hermite_rule: eigenvalue solver failed", 0.0, 0.0, m);
  }
  rule.nodes.resize(m);
  rule.log_weights.resize(m);
  const double sqrt2m = std::sqrt(2.0 * m);
  for (int i = 0; i < m; ++i) {
    double x = solver.eigenvalues()[i];
    HermiteEval e{};
    for (int iter = 0; iter < 8; ++iter) {
      e = eval_orthonormal_hermite(m, x);
      const double step = e.pm / (sqrt2m * e.pm1);
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    e = eval_orthonormal_hermite(m, x);
    rule.nodes[i] = x;
    rule.log_weights[i] = -std::log(double(m)) - 2.0 * (std::log(std::abs(e.pm1)) + e.log_scale);
  }
  // Enforce exact antisymmetry of nodes and symmetry of weights.
  for (int i = 0; i < m / 2; ++i) {
    const double x = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
    const double lw = 0.5 * (rule.log_weights[i] + rule.log_weights[m - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.log_weights[i] = lw;
    rule.log_weights[m - 1 - i] = lw;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

class RuleCache {
 public:
  using Factory = QuadratureRule (*)(int);
  explicit RuleCache(Factory f) : factory_(f) {}

  const QuadratureRule& get(int order) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = rules_.find(order); it != rules_.end()) return *it->second;
    }
    auto rule = std::make_unique<QuadratureRule>(factory_(order));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = rules_.try_emplace(order, std::move(rule));
    return *it->second;
  }

 private:
  Factory factory_;
  std::shared_mutex mutex_;
  std::map<int, std::unique_ptr<QuadratureRule>> rules_;
};

RuleCache& legendre_cache() {
  static RuleCache cache(&make_gauss_legendre);
  return cache;
}

RuleCache& hermite_cache() {
  static RuleCache cache(&make_gauss_hermite);
  return cache;
}

Scheme resolve_scheme(const Region& region, Scheme requested) {
  const std::size_t n = region_dim(region);
  if (n < 1 || n > kMaxDim) throw DomainError("quadrature: unsupported dimension");
  const bool full = std::holds_alternative<FullSpace>(region);
  const Scheme natural = full ? Scheme::gauss_hermite
                              : (n == 1 ? Scheme::gauss_legendre : Scheme::polar_product);
  if (requested == Scheme::automatic || requested == natural) return natural;
  std::ostringstream os;
  os << "quadrature: scheme " << to_string(requested) << " does not apply to this region"
     << " (expected " << to_string(natural) << ")";
  throw DomainError(os.str());
}

// Visits (point, log of weight * jacobian * gaussian density) for one rule.
template <class Visit>
void for_each_node(const Region& region, int m, Visit&& visit) {
  const std::size_t n = region_dim(region);
  const double log_norm = -0.5 * double(n) * std::log(kPi);

  if (const auto* full = std::get_if<FullSpace>(&region)) {
    const QuadratureRule& gh = hermite_cache().get(m);
    std::array<double, kMaxDim> c{};
    std::array<int, kMaxDim> idx{};
    const std::size_t dim = full->dim;
    while (true) {
      double lw = log_norm;
      for (std::size_t d = 0; d < dim; ++d) {
        c[d] = gh.nodes[idx[d]];
        lw += gh.log_weights[idx[d]];
      }
      visit(Point(std::span<const double>(c.data(), dim)), lw);
      std::size_t d = 0;
      while (d < dim && ++idx[d] == m) idx[d++] = 0;
      if (d == dim) break;
    }
    return;
  }

  const Ball* ball = std::get_if<Ball>(&region);
  const Annulus* annulus = std::get_if<Annulus>(&region);
  const Point& center = ball ? ball->center() : annulus->base().center();
  const double r_lo = ball ? 0.0 : annulus->inner_radius();
  const double r_hi = ball ? ball->radius() : annulus->outer_radius();

  const QuadratureRule& gl = legendre_cache().get(m);
  const double half = 0.5 * (r_hi - r_lo);
  const double mid = 0.5 * (r_hi + r_lo);
  const double log_half = std::log(half);

  auto density = [&](const Point& x) { return log_norm - x.norm_squared(); };

  if (n == 1) {
    // Ball or k = 0 annulus: one interval around the center; k >= 1: the two
    // intervals on either side.
    const bool two_sided = r_lo > 0.0;
    for (int side = two_sided ? -1 : 0; side <= (two_sided ? 1 : 0); side += 2) {
      for (int i = 0; i < m; ++i) {
        double offset;
        if (two_sided) {
          offset = side * (mid + half * gl.nodes[i]);
        } else {
          offset = r_hi * gl.nodes[i];
        }
        const Point x{center[0] + offset};
        const double lw = gl.log_weights[i] + (two_sided ? log_half : std::log(r_hi));
        visit(x, lw + density(x));
      }
    }
    return;
  }

  const double two_pi = 2.0 * kPi;
  const double log_dphi = std::log(two_pi / m);
  if (n == 2) {
    for (int i = 0; i < m; ++i) {
      const double rho = mid + half * gl.nodes[i];
      const double lw_r = gl.log_weights[i] + log_half + std::log(rho);
      for (int j = 0; j < m; ++j) {
        const double phi = two_pi * (j + 0.5) / m;
        const Point x{center[0] + rho * std::cos(phi), center[1] + rho * std::sin(phi)};
        visit(x, lw_r + log_dphi + density(x));
      }
    }
    return;
  }

  // n == 3: radius x cos(polar angle) x azimuth.
  for (int i = 0; i < m; ++i) {
    const double rho = mid + half * gl.nodes[i];
    const double lw_r = gl.log_weights[i] + log_half + 2.0 * std::log(rho);
    for (int a = 0; a < m; ++a) {
      const double mu = gl.nodes[a];
      const double sin_t = std::sqrt(1.0 - mu * mu);
      const double lw_ra = lw_r + gl.log_weights[a] + log_dphi;
      for (int j = 0; j < m; ++j) {
        const double phi = two_pi * (j + 0.5) / m;
        const Point x{center[0] + rho * sin_t * std::cos(phi),
                      center[1] + rho * sin_t * std::sin(phi), center[2] + rho * mu};
        visit(x, lw_ra + density(x));
      }
    }
  }
}

// Change between iterates measured against max(|I|, int |f|), so integrands
// that cancel to (nearly) zero still converge.
double relative_change(const LogNumber& prev, const LogNumber& cur, double log_scale) {
  const LogNumber diff = cur - prev;
  if (diff.is_zero()) return 0.0;
  const double log_ref = std::max(cur.log_magnitude(), log_scale);
  if (log_ref == kNegInf) return INFINITY;
  return std::exp(diff.log_magnitude() - log_ref);
}

struct FixedResult {
  LogNumber value;
  double log_abs = kNegInf;  // log int |f| under the same rule
};

FixedResult integrate_fixed_with_scale(const LogIntegrand& f, const Region& region, int order,
                                       Scheme scheme) {
  if (order < 1) throw DomainError("integrate_gamma_fixed: order must be positive");
  resolve_scheme(region, scheme);
  if (rule_node_count(region, order) > kMaxNodes) {
    throw DomainError("integrate_gamma_fixed: rule too large");
  }
  LogAccumulator acc;
  LogAccumulator abs_acc;
  for_each_node(region, order, [&](const Point& x, double log_w) {
    const LogNumber v = f(x);
    if (v.is_zero()) return;
    acc.add(LogNumber::from_log(v.log_magnitude() + log_w, v.sign()));
    abs_acc.add_log(v.log_magnitude() + log_w);
  });
  return {acc.result(), abs_acc.log_result_positive()};
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::automatic: return "automatic";
    case Scheme::gauss_hermite: return "gauss_hermite";
    case Scheme::gauss_legendre: return "gauss_legendre";
    case Scheme::polar_product: return "polar_product";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::automatic, Scheme::gauss_hermite, Scheme::gauss_legendre,
                   Scheme::polar_product}) {
    if (to_string(s) == name) return s;
  }
  throw DomainError("unknown quadrature scheme: " + std::string(name));
}

void QuadratureSpec::validate() const {
  if (order < 2) throw DomainError("QuadratureSpec: order must be >= 2");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("QuadratureSpec: tol must lie in (0, 1)");
  if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
}

const QuadratureRule& gauss_legendre_rule(int order) {
  if (order < 1) throw DomainError("gauss_legendre_rule: order must be positive");
  return legendre_cache().get(order);
}

const QuadratureRule& gauss_hermite_rule(int order) {
  if (order < 1) throw DomainError("gauss_hermite_rule: order must be positive");
  return hermite_cache().get(order);
}

std::size_t rule_node_count(const Region& region, int order) {
  const std::size_t n = region_dim(region);
  const auto m = static_cast<std::size_t>(order);
  std::size_t count = 1;
  for (std::size_t d = 0; d < n; ++d) count *= m;
  if (n == 1) {
    if (const auto* a = std::get_if<Annulus>(&region); a && a->k() > 0) count *= 2;
  }
  return count;
}

LogNumber integrate_gamma_fixed(const LogIntegrand& f, const Region& region, int order,
                                Scheme scheme) {
  return integrate_fixed_with_scale(f, region, order, scheme).value;
}

IntegrationReport integrate_gamma_report(const LogIntegrand& f, const Region& region,
                                         const QuadratureSpec& spec) {
  spec.validate();
  const Scheme scheme = resolve_scheme(region, spec.scheme);
  IntegrationReport report;
  int order = spec.order;
  LogNumber older = LogNumber::zero();
  FixedResult current = integrate_fixed_with_scale(f, region, order, scheme);
  LogNumber newer = current.value;
  for (int r = 1; r <= spec.max_refinements; ++r) {
    const int next = order * 2;
    if (rule_node_count(region, next) > kMaxNodes) break;
    older = newer;
    current = integrate_fixed_with_scale(f, region, next, scheme);
    newer = current.value;
    order = next;
    const double change = relative_change(older, newer, current.log_abs);
    report.rel_changes.push_back(change);
    if (change <= spec.tol) {
      report.value = newer;
      report.order = order;
      report.refinements = r;
      return report;
    }
  }
  std::ostringstream os;
  os << "quadrature did not reach relative tolerance " << spec.tol << " by order " << order;
  if (!report.rel_changes.empty()) os << " (last relative change " << report.rel_changes.back() << ")";
  os << "; last iterates log|I| = " << older.log_magnitude() << ", " << newer.log_magnitude();
  throw ConvergenceError(os.str(), older.log_magnitude(), newer.log_magnitude(), order);
}

LogNumber integrate_gamma_log(const LogIntegrand& f, const Region& region,
                              const QuadratureSpec& spec) {
  return integrate_gamma_report(f, region, spec).value;
}

LogNumber lq_norm_log(const LogIntegrand& g, const Region& region, double q,
                      const QuadratureSpec& spec) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("lq_norm_log: need 1 <= q < inf");
  const LogNumber integral = integrate_gamma_log(
      [&](const Point& x) {
        const LogNumber v = g(x);
        return v.is_zero() ? v : v.abs().pow(q);
      },
      region, spec);
  return integral.is_zero() ? integral : integral.pow(1.0 / q);
}

}  // namespace ou
