#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ou/quadrature.hpp"

namespace ou::cli {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Invariants of every module, at tolerances matching the unit tests.
// Randomized checks draw from a generator seeded with `seed`.
std::vector<CheckOutcome> run_selftest(std::uint64_t seed, const QuadratureSpec& spec);

}  // namespace ou::cli
