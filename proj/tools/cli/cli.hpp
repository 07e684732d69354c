#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ou/geometry.hpp"
#include "ou/quadrature.hpp"

namespace ou::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // selftest found a failing invariant
inline constexpr int kExitUsage = 2;       // invalid parameters
inline constexpr int kExitNumerical = 3;   // quadrature did not converge

// Runs one invocation of `ou-offdiag`; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "x1[,x2[,x3]]"
Point parse_point(const std::string& text);
// "x1[,x2[,x3]][:r]"; the radius defaults to the maximal admissible one.
Ball parse_ball(const std::string& text);
// steps equally spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int steps);

// Library defaults with the tolerance taken from OU_QUAD_TOL when set.
QuadratureSpec default_quadrature_spec();

}  // namespace ou::cli
