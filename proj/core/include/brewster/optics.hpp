#pragma once

#include <complex>
#include <utility>

// Plane-interface reflection geometry for a monochromatic beam hitting a
// dielectric from air.  Conventions used throughout the library:
//   - lengths are expressed in units of the vacuum wavelength lambda0
//   - transverse spatial frequencies ky are stored normalized to k0,
//     i.e. u = ky/k0 = sin(angle from the interface normal)
//   - angles are radians unless a function name says otherwise
namespace brewster::optics {

enum class Polarization { TE, TM };

// Incidence-side refractive index n1, substrate index n2, vacuum
// wavelength, and the tilt theta of the beam axis against the interface
// normal.  Members are validated once at construction.
struct OpticalConfig {
  double n1;
  double n2;
  double lambda0;
  double theta;

  OpticalConfig(double n1, double n2, double lambda0, double theta);

  double k0() const noexcept;

  // Air-side incidence with the beam axis on the Brewster angle of n2.
  static OpticalConfig at_brewster(double n2, double lambda0 = 1.0);
};

// atan(n2) for an air/dielectric interface; the TM reflection null.
double brewster_angle(double n2);

// Amplitude reflection coefficient at incidence angle theta_inc measured
// from the normal.  Real below the critical angle; acquires an imaginary
// part for evanescent transmission (total internal reflection).
std::complex<double> fresnel_reflection(const OpticalConfig& cfg,
                                        Polarization pol, double theta_inc);

// Angular-spectrum coordinate change between the beam frame and the
// interface frame: a plane-wave component with transverse frequency ky
// (k0 units) in a beam tilted by cfg.theta appears at
//   ky' = sin(theta + asin(ky))
// in the frame of the interface.  map_rotated_to_ky inverts this for
// ky' >= 0; components with |ky| beyond the propagating window are
// rejected.
double map_ky_to_rotated(const OpticalConfig& cfg, double ky);
double map_rotated_to_ky(const OpticalConfig& cfg, double ky_prime);

// Tilt angles for which every component of a beam band-limited to
// |ky| <= bandwidth stays propagating and on one side of the normal:
// [asin(W), acos(W)].  Empty (throws) once bandwidth >= 1/sqrt(2).
std::pair<double, double> rotation_window(double bandwidth);

}  // namespace brewster::optics
