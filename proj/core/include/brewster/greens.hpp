#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "brewster/optics.hpp"

// Spectral transfer functions ("Green's functions") G(ky) acting on the
// angular spectrum of a beam: output spectrum = G(ky) * input spectrum.
// Sampled on a uniform grid of normalized frequencies u = ky/k0 with
// |u| <= 1; queries between samples interpolate linearly and queries
// outside the sampled band return 0.
namespace brewster::greens {

class GreensFunction {
 public:
  GreensFunction(std::vector<double> grid,
                 std::vector<std::complex<double>> samples,
                 std::string label = {});

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<std::complex<double>>& samples() const noexcept {
    return samples_;
  }
  const std::string& label() const noexcept { return label_; }

  std::size_t size() const noexcept { return grid_.size(); }
  double band() const noexcept { return grid_.back(); }
  double spacing() const noexcept;

  // Linear interpolation between samples; exactly 0 outside the grid.
  std::complex<double> at(double u) const;

 private:
  std::vector<double> grid_;
  std::vector<std::complex<double>> samples_;
  std::string label_;
};

// Uniform grid over [-band, band] with exact mirror symmetry,
// grid[i] == -grid[points-1-i].  points must be odd so that u = 0 is a
// sample.
std::vector<double> symmetric_grid(double band, std::size_t points);

// First-order coefficient of the reflection null: the transfer function
// of the Brewster reflection is -derivative_scale(n2) * u to first order
// in u, with derivative_scale(n) = n/2 - 1/(2 n^3).
double derivative_scale(double n2);

// Transfer function of TM reflection off the cfg interface for a beam
// tilted to the Brewster angle: G(u) = r_TM(theta_B + asin(u)).  Every
// grid point must keep theta_B + asin(u) inside [0, pi/2).
GreensFunction exact_brewster_green(const optics::OpticalConfig& cfg,
                                    const std::vector<double>& grid);

// Re-expresses g in the interface frame, u' = sin(theta + asin(u)).
// The result is sampled on a symmetric grid of the same size covering
// [-B', B'] with B' = sin(theta + asin(band)); only u' values reached
// from the beam band carry data (G'(|u'|) = G(sin(asin|u'| - theta))),
// the rest are zero.  Even in u' by construction, mirror samples are
// bit-identical.  Requires cfg.theta inside rotation_window(band).
GreensFunction transform_green_to_rotated(const GreensFunction& g,
                                          const optics::OpticalConfig& cfg);

// First-order model of the Brewster null: G_t(u) = -derivative_scale * u.
GreensFunction taylor_green(const optics::OpticalConfig& cfg,
                            const std::vector<double>& grid);

// G(u) = scale * (i u), the spectral symbol of scale/(i k0) * d/dy under
// the e^{-i ky y} spectral kernel used by brewster::field.  scale = i
// times derivative_scale reproduces taylor_green.
GreensFunction ideal_differentiator_green(std::complex<double> scale,
                                          const std::vector<double>& grid);

// Pointwise product on the shared grid of a and b (grids must match to
// 1e-12 of the band); realizes two reflections in sequence.
GreensFunction cascade(const GreensFunction& a, const GreensFunction& b);

// CSV with header ky_over_k0,re,im; values printed with %.17g.
void write_csv(std::ostream& os, const GreensFunction& g);

}  // namespace brewster::greens
