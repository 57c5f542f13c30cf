#include "brewster/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace brewster::optics {

namespace {

[[noreturn]] void fail_domain(const std::string& what) {
  throw std::domain_error(what);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

OpticalConfig::OpticalConfig(double n1_, double n2_, double lambda0_,
                             double theta_)
    : n1(n1_), n2(n2_), lambda0(lambda0_), theta(theta_) {
  if (!(n1 >= 1.0) || !std::isfinite(n1))
    fail_domain("OpticalConfig: n1 must be >= 1, got " + num(n1));
  if (!(n2 > n1) || !std::isfinite(n2))
    fail_domain("OpticalConfig: n2 must exceed n1, got n2 = " + num(n2));
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
    fail_domain("OpticalConfig: lambda0 must be positive, got " +
                num(lambda0));
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2))
    fail_domain("OpticalConfig: theta must lie in [0, pi/2), got " +
                num(theta));
}

double OpticalConfig::k0() const noexcept {
  return 2.0 * std::numbers::pi / lambda0;
}

OpticalConfig OpticalConfig::at_brewster(double n2, double lambda0) {
  return OpticalConfig(1.0, n2, lambda0, brewster_angle(n2));
}

double brewster_angle(double n2) {
  if (!(n2 > 1.0) || !std::isfinite(n2))
    fail_domain("brewster_angle: need n2 > 1, got " + num(n2));
  return std::atan(n2);
}

std::complex<double> fresnel_reflection(const OpticalConfig& cfg,
                                        Polarization pol, double theta_inc) {
  if (!(theta_inc >= 0.0) || !(theta_inc < std::numbers::pi / 2))
    fail_domain("fresnel_reflection: theta_inc must lie in [0, pi/2), got " +
                num(theta_inc));
  const double n = cfg.n2 / cfg.n1;
  const double s = std::sin(theta_inc);
  const double c = std::cos(theta_inc);
  // sqrt(n^2 - sin^2) = n*cos(theta_t); the complex sqrt keeps the
  // formulas valid past a critical angle (n < 1 is rejected upstream,
  // so here it never goes negative, but the guard costs nothing).
  const std::complex<double> root =
      std::sqrt(std::complex<double>(n * n - s * s, 0.0));
  if (pol == Polarization::TM)
    return (n * n * c - root) / (n * n * c + root);
  return (c - root) / (c + root);
}

double map_ky_to_rotated(const OpticalConfig& cfg, double ky) {
  if (!(std::abs(ky) <= 1.0))
    fail_domain("map_ky_to_rotated: |ky| must be <= k0, got ky/k0 = " +
                num(ky));
  return std::sin(cfg.theta + std::asin(ky));
}

double map_rotated_to_ky(const OpticalConfig& cfg, double ky_prime) {
  if (!(ky_prime >= 0.0) || !(ky_prime <= 1.0))
    fail_domain("map_rotated_to_ky: ky'/k0 must lie in [0, 1], got " +
                num(ky_prime));
  return std::sin(std::asin(ky_prime) - cfg.theta);
}

std::pair<double, double> rotation_window(double bandwidth) {
  if (!(bandwidth > 0.0) || !(bandwidth < 1.0))
    fail_domain("rotation_window: bandwidth/k0 must lie in (0, 1), got " +
                num(bandwidth));
  const double lo = std::asin(bandwidth);
  const double hi = std::acos(bandwidth);
  if (!(lo < hi))
    fail_domain("rotation_window: empty for bandwidth/k0 = " + num(bandwidth) +
                " (needs bandwidth < k0/sqrt(2))");
  return {lo, hi};
}

}  // namespace brewster::optics
