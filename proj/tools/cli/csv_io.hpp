#pragma once

#include <iosfwd>
#include <string>

#include "ou/experiments.hpp"

namespace ou::cli {

// Shortest form that parses back to the same double (17 significant digits).
std::string format_double(double v);
double parse_double(const std::string& text);

inline constexpr const char* kSweepHeader = "cB_norm,log_lhs,log_gammaB,log_implied_const";
inline constexpr const char* kRegimeHeader = "p,q,t,t_star,p_nelson,class";

void write_sweep_csv(std::ostream& os, const SweepResult& result);
// Reads rows and the `# fitted_slope=...` footer written by write_sweep_csv.
SweepResult read_sweep_csv(std::istream& is);

void write_regime_csv(std::ostream& os, const RegimeMap& map);
RegimeMap read_regime_csv(std::istream& is);

Regime regime_from_string(const std::string& name);

}  // namespace ou::cli
