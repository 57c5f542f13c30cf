#include "brewster/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "internal.hpp"

namespace brewster::greens {

using detail::fmt17;

GreensFunction::GreensFunction(std::vector<double> grid,
                               std::vector<std::complex<double>> samples,
                               std::string label)
    : grid_(std::move(grid)),
      samples_(std::move(samples)),
      label_(std::move(label)) {
  if (samples_.size() != grid_.size())
    throw std::invalid_argument("GreensFunction: " +
                                std::to_string(samples_.size()) +
                                " samples on " + std::to_string(grid_.size()) +
                                " grid points");
  detail::uniform_spacing(grid_, "GreensFunction");
  const double tol = 1e-12 * std::max(1.0, std::abs(grid_.back()));
  if (std::abs(grid_.front() + grid_.back()) > tol)
    throw std::invalid_argument("GreensFunction: grid not symmetric about 0");
  if (grid_.back() > 1.0 + tol)
    throw std::invalid_argument(
        "GreensFunction: band limit exceeds k0, grid reaches " +
        fmt17(grid_.back()));
}

double GreensFunction::spacing() const noexcept {
  return (grid_.back() - grid_.front()) /
         static_cast<double>(grid_.size() - 1);
}

std::complex<double> GreensFunction::at(double u) const {
  if (u < grid_.front() || u > grid_.back()) return {0.0, 0.0};
  auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
  std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  if (hi == grid_.size()) --hi;  // u == grid_.back()
  if (hi == 0) ++hi;
  const std::size_t lo = hi - 1;
  const double t = (u - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return samples_[lo] + t * (samples_[hi] - samples_[lo]);
}

std::vector<double> symmetric_grid(double band, std::size_t points) {
  if (!(band > 0.0) || !(band <= 1.0))
    throw std::domain_error("symmetric_grid: band/k0 must lie in (0, 1], got " +
                            fmt17(band));
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument(
        "symmetric_grid: points must be odd and >= 3, got " +
        std::to_string(points));
  const std::size_t half = points / 2;
  std::vector<double> g(points);
  g[half] = 0.0;
  // Mirror construction keeps g[i] == -g[points-1-i] exact in floating
  // point, which downstream evenness checks rely on.
  for (std::size_t j = 1; j <= half; ++j) {
    const double v =
        band * (static_cast<double>(j) / static_cast<double>(half));
    g[half + j] = v;
    g[half - j] = -v;
  }
  return g;
}

double derivative_scale(double n2) {
  if (!(n2 > 1.0) || !std::isfinite(n2))
    throw std::domain_error("derivative_scale: need n2 > 1, got " + fmt17(n2));
  return 0.5 * n2 - 0.5 / (n2 * n2 * n2);
}

GreensFunction exact_brewster_green(const optics::OpticalConfig& cfg,
                                    const std::vector<double>& grid) {
  std::vector<std::complex<double>> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double angle = cfg.theta + std::asin(grid[i]);
    if (!(angle >= 0.0) || !(angle < std::numbers::pi / 2))
      throw std::domain_error(
          "exact_brewster_green: component at u = " + fmt17(grid[i]) +
          " leaves [0, pi/2) incidence (angle " + fmt17(angle) + " rad)");
    s[i] = optics::fresnel_reflection(cfg, optics::Polarization::TM, angle);
  }
  return GreensFunction(grid, std::move(s), "exact");
}

GreensFunction transform_green_to_rotated(const GreensFunction& g,
                                          const optics::OpticalConfig& cfg) {
  const double band = g.band();
  const auto window = optics::rotation_window(band);
  if (cfg.theta < window.first || cfg.theta > window.second)
    throw std::domain_error(
        "transform_green_to_rotated: theta = " + fmt17(cfg.theta) +
        " outside the rotation window [" + fmt17(window.first) + ", " +
        fmt17(window.second) + "]");

  const double band_rot = optics::map_ky_to_rotated(cfg, band);
  std::vector<double> grid_rot = symmetric_grid(band_rot, g.size());
  std::vector<std::complex<double>> s(grid_rot.size());

  // The image of [-band, band] under the rotation is a one-sided interval
  // inside [0, band_rot]; pulling each |u'| back through the inverse map
  // and letting out-of-band queries read as zero fills the rest.  Edge
  // queries can land a rounding error outside the source grid, so they
  // are snapped back before lookup.
  const std::size_t half = grid_rot.size() / 2;
  const double lo = g.grid().front();
  const double hi = g.grid().back();
  const double snap = 1e-9;
  for (std::size_t j = 0; j <= half; ++j) {
    double u = optics::map_rotated_to_ky(cfg, grid_rot[half + j]);
    if (u > hi && u < hi + snap) u = hi;
    if (u < lo && u > lo - snap) u = lo;
    const std::complex<double> v = g.at(u);
    s[half + j] = v;
    s[half - j] = v;  // even extension, mirror samples bit-identical
  }
  return GreensFunction(std::move(grid_rot), std::move(s),
                        g.label().empty() ? "rotated" : g.label() + "-rotated");
}

GreensFunction taylor_green(const optics::OpticalConfig& cfg,
                            const std::vector<double>& grid) {
  const double c = derivative_scale(cfg.n2 / cfg.n1);
  std::vector<std::complex<double>> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = {-c * grid[i], 0.0};
  return GreensFunction(grid, std::move(s), "taylor");
}

GreensFunction ideal_differentiator_green(std::complex<double> scale,
                                          const std::vector<double>& grid) {
  std::vector<std::complex<double>> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    s[i] = scale * std::complex<double>(0.0, grid[i]);
  return GreensFunction(grid, std::move(s), "ideal");
}

GreensFunction cascade(const GreensFunction& a, const GreensFunction& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cascade: grids differ in size");
  const double tol = 1e-12 * std::max(1.0, a.band());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.grid()[i] - b.grid()[i]) > tol)
      throw std::invalid_argument("cascade: grids differ near index " +
                                  std::to_string(i));
  std::vector<std::complex<double>> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    s[i] = a.samples()[i] * b.samples()[i];
  return GreensFunction(a.grid(), std::move(s), "cascade");
}

void write_csv(std::ostream& os, const GreensFunction& g) {
  os << "ky_over_k0,re,im\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << fmt17(g.grid()[i]) << ',' << fmt17(g.samples()[i].real()) << ','
       << fmt17(g.samples()[i].imag()) << '\n';
}

}  // namespace brewster::greens
