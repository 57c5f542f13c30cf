#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "brewster/greens.hpp"

// Transverse beam profiles sampled on a uniform y grid (lambda0 units)
// and their angular spectra.  Transform conventions, fixed once here:
//
//   y_j = (j - N/2) dy,   u_m = (m - N/2) du,   du = 1/(N dy)
//   F(u_m) = dy  * sum_j f(y_j) exp(-2 pi i u_m y_j)
//   f(y_j) = du  * sum_m F(u_m) exp(+2 pi i u_m y_j)
//
// u = ky/k0 as everywhere in the library, so the physical transverse
// wavenumber is ky = 2 pi u / lambda0 and d/dy acts on the spectrum as
// multiplication by 2 pi i u.  The pairing is unitary in the sense
// sum |f|^2 dy = sum |F|^2 du.
namespace brewster::field {

// N complex samples over a centered window of the given total width.
struct GridSpec {
  std::size_t points = 16384;  // power of two in [2^8, 2^20]
  double span = 512.0;         // window width in lambda0 units

  double spacing() const;
  std::vector<double> make_y() const;
};

class SampledField {
 public:
  SampledField(std::vector<double> y_grid,
               std::vector<std::complex<double>> values);

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<std::complex<double>>& values() const noexcept {
    return values_;
  }
  std::size_t size() const noexcept { return grid_.size(); }
  double spacing() const noexcept;
  double span() const noexcept;

 private:
  std::vector<double> grid_;
  std::vector<std::complex<double>> values_;
};

class Spectrum {
 public:
  // The ky grid (k0 units) must be the conjugate of a valid field grid:
  // power-of-two length, uniform, zero at index N/2.
  Spectrum(std::vector<double> ky_grid,
           std::vector<std::complex<double>> values);

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<std::complex<double>>& values() const noexcept {
    return values_;
  }
  std::size_t size() const noexcept { return grid_.size(); }
  double spacing() const noexcept;

  // Half-width of the support at the 1% amplitude cutoff, recorded at
  // construction; 0 for an all-zero spectrum.
  double bandwidth_w() const noexcept { return bandwidth_w_; }

 private:
  std::vector<double> grid_;
  std::vector<std::complex<double>> values_;
  double bandwidth_w_;
};

// exp(-(y/w)^2) with w = beamwidth/2: beamwidth is the full width of the
// 1/e amplitude contour.
SampledField make_gaussian(double beamwidth, const GridSpec& grid);

// sin(2 pi W y)/(2 pi W y), unit peak: rectangular spectrum of half-width
// W = bandwidth (k0 units) and plateau height 1/(2W).
SampledField make_sinc(double bandwidth, const GridSpec& grid);

Spectrum to_spectrum(const SampledField& f);
SampledField to_field(const Spectrum& F);

// Multiplies the spectrum of f by g sample-by-sample (g interpolated onto
// the spectral grid, zero outside its band) and transforms back.  Warns
// on stderr when a non-negligible share of the spectral energy falls
// outside g's band or past |ky| = k0, and when g is sampled coarser than
// half the spectral bin.  flip_output mirrors the result, h(y) -> h(-y).
SampledField apply_green(const SampledField& f,
                         const greens::GreensFunction& g,
                         bool flip_output = false);

enum class DerivativeMethod { spectral, central_difference };

// d/dy of f (per lambda0), either exactly on the spectrum or by the
// periodic second-order centered stencil.
SampledField derivative_oracle(const SampledField& f, DerivativeMethod m);

// Largest |ky/k0| still above epsilon times the spectral peak; 0 when
// nothing clears the cutoff.  epsilon in (0, 1]; all-zero spectra are a
// domain error.
double measured_bandwidth(const Spectrum& F, double epsilon);

// Pointwise arithmetic on matching grids, for superposition checks.
SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator*(std::complex<double> c, const SampledField& f);

// CSV with header y_over_lambda0,re,im; values printed with %.17g.
void write_csv(std::ostream& os, const SampledField& f);
SampledField read_csv(std::istream& is);

}  // namespace brewster::field
