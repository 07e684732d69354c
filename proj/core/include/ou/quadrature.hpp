#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "ou/geometry.hpp"
#include "ou/log_number.hpp"

namespace ou {

enum class Scheme {
  automatic,       // chosen from the region: Hermite, Legendre (n=1) or polar
  gauss_hermite,   // full space only
  gauss_legendre,  // balls and annuli in n = 1
  polar_product,   // balls and annuli in n = 2, 3
};

std::string_view to_string(Scheme scheme) noexcept;
Scheme scheme_from_string(std::string_view name);

struct QuadratureSpec {
  Scheme scheme = Scheme::automatic;
  int order = 16;
  double tol = 1e-8;
  int max_refinements = 12;

  void validate() const;
};

// One-dimensional rule with weights kept in log form so that Hermite rules of
// high order keep their tail weights instead of flushing them to zero.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

// Nodes on [-1, 1] for weight 1. Cached; the reference stays valid.
const QuadratureRule& gauss_legendre_rule(int order);
// Nodes on R for weight e^{-x^2}. Cached; the reference stays valid.
const QuadratureRule& gauss_hermite_rule(int order);

// Maps a point to the log of the integrand value (signed).
using LogIntegrand = std::function<LogNumber(const Point&)>;

struct IntegrationReport {
  LogNumber value;
  int order = 0;
  int refinements = 0;
  // Change between successive iterates, one entry per refinement.
  std::vector<double> rel_changes;
};

// Single rule of the given order for  int_region e^{f} dgamma  (no refinement).
LogNumber integrate_gamma_fixed(const LogIntegrand& f, const Region& region, int order,
                                Scheme scheme = Scheme::automatic);

// Doubles the order from spec.order until successive iterates agree to
// spec.tol or spec.max_refinements is exhausted, in which case a
// ConvergenceError carrying the last two iterates is thrown. The change is
// relative to max(|I|, int |f| dgamma); for sign-definite f that is |I|.
IntegrationReport integrate_gamma_report(const LogIntegrand& f, const Region& region,
                                         const QuadratureSpec& spec);

LogNumber integrate_gamma_log(const LogIntegrand& f, const Region& region,
                              const QuadratureSpec& spec);

// (int_F |g|^q dgamma)^{1/q} for 1 <= q < inf.
LogNumber lq_norm_log(const LogIntegrand& g, const Region& region, double q,
                      const QuadratureSpec& spec);

// Number of integrand evaluations one rule of this order costs on the region.
std::size_t rule_node_count(const Region& region, int order);

}  // namespace ou
