#include "brewster/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "internal.hpp"

namespace brewster::analysis {

using detail::fmt17;

namespace {

void check_shared_grid(const greens::GreensFunction& a,
                       const greens::GreensFunction& b, const char* who) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(who) + ": grids differ in size");
  const double tol = 1e-12 * std::max(1.0, a.band());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.grid()[i] - b.grid()[i]) > tol)
      throw std::invalid_argument(std::string(who) +
                                  ": grids differ near index " +
                                  std::to_string(i));
}

}  // namespace

double spectral_error(const greens::GreensFunction& g,
                      const greens::GreensFunction& g_ref, double band) {
  if (!(band > 0.0) || !std::isfinite(band))
    throw std::domain_error("spectral_error: band must be positive, got " +
                            fmt17(band));
  check_shared_grid(g, g_ref, "spectral_error");
  const double edge = band + 1e-12 * std::max(1.0, band);
  double num = 0.0, den = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.grid()[i]) > edge) continue;
    num += std::norm(g.samples()[i] - g_ref.samples()[i]);
    den += std::norm(g_ref.samples()[i]);
    ++used;
  }
  if (used == 0)
    throw std::domain_error("spectral_error: no samples inside |ky/k0| <= " +
                            fmt17(band));
  if (den == 0.0)
    throw std::domain_error(
        "spectral_error: reference vanishes on the evaluated band");
  return std::sqrt(num / den);
}

double spatial_error(const field::SampledField& h,
                     const field::SampledField& h_ref) {
  if (h.size() != h_ref.size())
    throw std::invalid_argument("spatial_error: grids differ in size");
  const double tol = 1e-12 * std::max(std::abs(h.grid().front()),
                                      std::abs(h.grid().back()));
  for (std::size_t j = 0; j < h.size(); ++j)
    if (std::abs(h.grid()[j] - h_ref.grid()[j]) > tol)
      throw std::invalid_argument("spatial_error: grids differ near index " +
                                  std::to_string(j));
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    num += std::norm(h.values()[j] - h_ref.values()[j]);
    den += std::norm(h_ref.values()[j]);
  }
  if (den == 0.0)
    throw std::domain_error("spatial_error: reference beam is identically 0");
  return std::sqrt(num / den);
}

double max_bandwidth(double n2, double tolerance) {
  if (!(tolerance > 0.0) || !(tolerance < 1.0))
    throw std::domain_error(
        "max_bandwidth: tolerance must lie in (0, 1), got " + fmt17(tolerance));
  const auto cfg = optics::OpticalConfig::at_brewster(n2);
  // Band edge must stay below grazing incidence for the exact transfer
  // function to exist: theta_B + asin(W) < pi/2, i.e. W < cos(theta_B).
  const double grazing = std::cos(cfg.theta);
  const double resolution = 1e-4;
  constexpr std::size_t kProbePoints = 2001;

  std::vector<std::pair<double, double>> probes;
  auto error_at = [&](double w) {
    const auto grid = greens::symmetric_grid(w, kProbePoints);
    const double e = spectral_error(greens::exact_brewster_green(cfg, grid),
                                    greens::taylor_green(cfg, grid), w);
    probes.emplace_back(w, e);
    return e;
  };
  auto check_monotone = [&probes]() {
    auto sorted = probes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i].second < sorted[i - 1].second - 1e-12)
        throw std::runtime_error(
            "max_bandwidth: spectral error not monotone in the band, probed " +
            fmt17(sorted[i - 1].first) + " -> " + fmt17(sorted[i].first));
  };

  double lo = resolution;
  double hi = std::min(0.7, grazing * (1.0 - 1e-9));
  if (error_at(lo) > tolerance) return 0.0;
  if (error_at(hi) <= tolerance) {
    check_monotone();
    return hi;
  }
  std::size_t iterations = 0;
  while (hi - lo > resolution) {
    if (++iterations > 64)
      throw std::runtime_error(
          "max_bandwidth: no convergence in 64 bisection steps");
    const double mid = 0.5 * (lo + hi);
    if (error_at(mid) <= tolerance)
      lo = mid;
    else
      hi = mid;
  }
  check_monotone();
  return lo;
}

std::pair<double, double> parseval_error_identity_check(
    const field::SampledField& f, const greens::GreensFunction& g,
    const greens::GreensFunction& g_ref) {
  const auto F = field::to_spectrum(f);
  // At a 50% amplitude cutoff the measured support of a rectangular
  // spectrum lands on its edge bin, so the spectral error is evaluated
  // over exactly the band that carries the beam's energy.
  const double w_eval = field::measured_bandwidth(F, 0.5);
  const double e_g = spectral_error(g, g_ref, w_eval);
  const double e_f = spatial_error(field::apply_green(f, g),
                                   field::apply_green(f, g_ref));
  return {e_g, e_f};
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

void write_json(std::ostream& os, const ErrorReport& report,
                const std::map<std::string, double>& measured_bandwidth) {
  os << "{\n";
  os << "  \"e_G\": " << fmt17(report.e_G) << ",\n";
  os << "  \"e_f\": " << fmt17(report.e_f) << ",\n";
  os << "  \"n2\": " << fmt17(report.n2) << ",\n";
  os << "  \"W\": " << fmt17(report.W) << ",\n";
  os << "  \"grid\": {\n";
  os << "    \"points\": " << report.grid.points << ",\n";
  os << "    \"span\": " << fmt17(report.grid.span) << "\n";
  os << "  },\n";
  os << "  \"conventions\": {\n";
  os << "    \"beamwidth_definition\": \""
     << json_escape(report.conventions.beamwidth_definition) << "\",\n";
  os << "    \"dft_sign\": \"" << json_escape(report.conventions.dft_sign)
     << "\",\n";
  os << "    \"flip_output\": "
     << (report.conventions.flip_output ? "true" : "false") << "\n";
  os << "  }";
  if (!measured_bandwidth.empty()) {
    os << ",\n  \"measured_bandwidth\": {\n";
    std::size_t k = 0;
    for (const auto& [key, value] : measured_bandwidth) {
      os << "    \"" << json_escape(key) << "\": " << fmt17(value);
      os << (++k == measured_bandwidth.size() ? "\n" : ",\n");
    }
    os << "  }";
  }
  os << "\n}\n";
}

}  // namespace brewster::analysis
