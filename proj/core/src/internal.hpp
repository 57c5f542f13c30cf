#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

// Helpers shared by the library translation units; not installed.
namespace brewster::detail {

// Shortest exact decimal form of v ("%.17g" round-trips doubles).
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Validates that g is strictly ascending with uniform spacing; tolerance
// is taken relative to the grid extent since rounding in grid
// construction scales with the endpoint magnitude, not the step.
inline double uniform_spacing(const std::vector<double>& g, const char* who) {
  if (g.size() < 2)
    throw std::invalid_argument(std::string(who) +
                                ": grid needs at least two points");
  const double extent = g.back() - g.front();
  if (!(extent > 0.0))
    throw std::invalid_argument(std::string(who) + ": grid must ascend");
  const double step = extent / static_cast<double>(g.size() - 1);
  const double tol =
      1e-12 * std::max({std::abs(g.front()), std::abs(g.back()), step});
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double d = g[i] - g[i - 1];
    if (std::abs(d - step) > tol)
      throw std::invalid_argument(std::string(who) +
                                  ": grid spacing not uniform near index " +
                                  std::to_string(i));
  }
  return step;
}

}  // namespace brewster::detail
