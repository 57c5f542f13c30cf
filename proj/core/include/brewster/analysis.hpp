#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "brewster/field.hpp"

// Error metrics between transfer functions and between output beams, and
// the derived figure of merit: the widest band a first-order model holds
// over at a given error budget.  All norms are plain discrete L2 sums,
// no spectral weighting.
namespace brewster::analysis {

struct GridMeta {
  std::size_t points = 0;
  double span = 0.0;
};

struct ConventionNotes {
  std::string beamwidth_definition;
  std::string dft_sign;
  bool flip_output = false;
};

struct ErrorReport {
  double e_G = 0.0;  // relative spectral error over the evaluated band
  double e_f = 0.0;  // relative spatial error of the output beam
  double n2 = 0.0;
  double W = 0.0;    // band half-width (k0 units) the errors refer to
  GridMeta grid;
  ConventionNotes conventions;
};

// ||g - g_ref|| / ||g_ref|| over the samples with |ky/k0| <= band.  The
// two transfer functions must share their grid.
double spectral_error(const greens::GreensFunction& g,
                      const greens::GreensFunction& g_ref, double band);

// ||h - h_ref|| / ||h_ref|| over the full spatial grid.
double spatial_error(const field::SampledField& h,
                     const field::SampledField& h_ref);

// Largest band half-width W (k0 units, 1e-4 resolution) for which the
// first-order transfer function stays within the relative error budget
// of the exact one at the Brewster tilt of n2.  Bisection; the spectral
// error is checked to be monotone over every probed W.
double max_bandwidth(double n2, double tolerance);

// For a beam with (approximately) rectangular spectrum: evaluates the
// spectral error of g against g_ref over the measured support of f and
// the spatial error between the two filtered outputs.  With flat
// spectral weighting the two coincide, which is what callers assert.
std::pair<double, double> parseval_error_identity_check(
    const field::SampledField& f, const greens::GreensFunction& g,
    const greens::GreensFunction& g_ref);

// Deterministic JSON (fixed key order, %.17g numbers).  measured_bandwidth
// entries, when given, are emitted as an extra object keyed as passed.
void write_json(std::ostream& os, const ErrorReport& report,
                const std::map<std::string, double>& measured_bandwidth = {});

}  // namespace brewster::analysis
