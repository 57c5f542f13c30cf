#include "brewster/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "internal.hpp"

namespace brewster::field {

using cd = std::complex<double>;
using detail::fmt17;

namespace {

constexpr std::size_t kMinPoints = 1u << 8;
constexpr std::size_t kMaxPoints = 1u << 20;

// One FFTW plan pair per transform size, in-place on an aligned scratch
// buffer.  FFTW_ESTIMATE picks the algorithm from heuristics alone, so
// results never depend on runtime measurement; planning is serialized
// (the FFTW planner is not thread-safe) and execution reuses the shared
// scratch, hence the per-instance mutex.
class Dft {
 public:
  explicit Dft(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = fftw_alloc_complex(n);
    if (!buf_) throw std::bad_alloc();
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Dft: fftw planning failed");
  }

  ~Dft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  void run(const cd* in, cd* out, int sign) const {
    std::lock_guard<std::mutex> lock(exec_);
    std::memcpy(buf_, in, n_ * sizeof(fftw_complex));
    fftw_execute(sign < 0 ? fwd_ : bwd_);
    std::memcpy(out, buf_, n_ * sizeof(fftw_complex));
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
  mutable std::mutex exec_;
};

Dft& dft_for(std::size_t n) {
  static std::mutex m;
  static std::map<std::size_t, std::unique_ptr<Dft>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Dft>(n);
  return *slot;
}

// Rotation by half the length maps index 0 <-> N/2; with N even it is an
// involution, so the same roll serves before and after the transform.
std::vector<cd> roll_half(const std::vector<cd>& x) {
  const std::size_t n = x.size();
  const std::size_t h = n / 2;
  std::vector<cd> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[(i + h) % n];
  return y;
}

void check_grid_shape(const std::vector<double>& g, const char* who) {
  if (!detail::is_pow2(g.size()) || g.size() < kMinPoints ||
      g.size() > kMaxPoints)
    throw std::invalid_argument(std::string(who) +
                                ": length must be a power of two in [2^8, "
                                "2^20], got " +
                                std::to_string(g.size()));
  detail::uniform_spacing(g, who);
  const double scale = std::max(std::abs(g.front()), std::abs(g.back()));
  if (std::abs(g[g.size() / 2]) > 1e-12 * scale)
    throw std::invalid_argument(std::string(who) +
                                ": grid not centered, midpoint sits at " +
                                fmt17(g[g.size() / 2]));
}

double bandwidth_of(const std::vector<double>& u, const std::vector<cd>& v,
                    double epsilon) {
  double peak = 0.0;
  for (const auto& x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  double w = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m)
    if (std::abs(v[m]) > epsilon * peak) w = std::max(w, std::abs(u[m]));
  return w;
}

}  // namespace

double GridSpec::spacing() const {
  if (!detail::is_pow2(points) || points < kMinPoints || points > kMaxPoints)
    throw std::invalid_argument(
        "GridSpec: points must be a power of two in [2^8, 2^20], got " +
        std::to_string(points));
  if (!(span > 0.0) || !std::isfinite(span))
    throw std::invalid_argument("GridSpec: span must be positive, got " +
                                fmt17(span));
  return span / static_cast<double>(points);
}

std::vector<double> GridSpec::make_y() const {
  const double dy = spacing();
  const std::size_t h = points / 2;
  std::vector<double> y(points);
  for (std::size_t j = 0; j < points; ++j)
    y[j] = (static_cast<double>(j) - static_cast<double>(h)) * dy;
  return y;
}

SampledField::SampledField(std::vector<double> y_grid,
                           std::vector<std::complex<double>> values)
    : grid_(std::move(y_grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("SampledField: " +
                                std::to_string(values_.size()) +
                                " values on " + std::to_string(grid_.size()) +
                                " grid points");
  check_grid_shape(grid_, "SampledField");
}

double SampledField::spacing() const noexcept {
  return (grid_.back() - grid_.front()) / static_cast<double>(size() - 1);
}

double SampledField::span() const noexcept {
  return spacing() * static_cast<double>(size());
}

Spectrum::Spectrum(std::vector<double> ky_grid,
                   std::vector<std::complex<double>> values)
    : grid_(std::move(ky_grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("Spectrum: " + std::to_string(values_.size()) +
                                " values on " + std::to_string(grid_.size()) +
                                " grid points");
  check_grid_shape(grid_, "Spectrum");
  bandwidth_w_ = bandwidth_of(grid_, values_, 1e-2);
}

double Spectrum::spacing() const noexcept {
  return (grid_.back() - grid_.front()) / static_cast<double>(size() - 1);
}

SampledField make_gaussian(double beamwidth, const GridSpec& grid) {
  if (!(beamwidth > 0.0) || !std::isfinite(beamwidth))
    throw std::domain_error("make_gaussian: beamwidth must be positive, got " +
                            fmt17(beamwidth));
  const double w = 0.5 * beamwidth;  // full width at 1/e -> half-width w
  auto y = grid.make_y();
  std::vector<cd> v(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double t = y[j] / w;
    v[j] = {std::exp(-t * t), 0.0};
  }
  return SampledField(std::move(y), std::move(v));
}

SampledField make_sinc(double bandwidth, const GridSpec& grid) {
  if (!(bandwidth > 0.0) || !(bandwidth < 1.0))
    throw std::domain_error(
        "make_sinc: bandwidth/k0 must lie in (0, 1), got " + fmt17(bandwidth));
  auto y = grid.make_y();
  std::vector<cd> v(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double x = 2.0 * std::numbers::pi * bandwidth * y[j];
    v[j] = {x == 0.0 ? 1.0 : std::sin(x) / x, 0.0};
  }
  return SampledField(std::move(y), std::move(v));
}

Spectrum to_spectrum(const SampledField& f) {
  const std::size_t n = f.size();
  const std::size_t h = n / 2;
  const double dy = f.spacing();
  const double du = 1.0 / (static_cast<double>(n) * dy);

  std::vector<cd> out(n);
  {
    auto rolled = roll_half(f.values());
    dft_for(n).run(rolled.data(), out.data(), -1);
  }
  auto shifted = roll_half(out);
  for (auto& v : shifted) v *= dy;

  std::vector<double> u(n);
  for (std::size_t m = 0; m < n; ++m)
    u[m] = (static_cast<double>(m) - static_cast<double>(h)) * du;
  return Spectrum(std::move(u), std::move(shifted));
}

SampledField to_field(const Spectrum& F) {
  const std::size_t n = F.size();
  const std::size_t h = n / 2;
  const double du = F.spacing();
  const double dy = 1.0 / (static_cast<double>(n) * du);

  std::vector<cd> out(n);
  {
    auto rolled = roll_half(F.values());
    dft_for(n).run(rolled.data(), out.data(), +1);
  }
  auto shifted = roll_half(out);
  for (auto& v : shifted) v *= du;

  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j)
    y[j] = (static_cast<double>(j) - static_cast<double>(h)) * dy;
  return SampledField(std::move(y), std::move(shifted));
}

SampledField apply_green(const SampledField& f,
                         const greens::GreensFunction& g, bool flip_output) {
  Spectrum F = to_spectrum(f);
  const auto& u = F.grid();
  const auto& Fv = F.values();

  double total = 0.0, covered = 0.0, evanescent = 0.0;
  for (std::size_t m = 0; m < F.size(); ++m) {
    const double e = std::norm(Fv[m]);
    total += e;
    if (u[m] >= g.grid().front() && u[m] <= g.grid().back()) covered += e;
    if (std::abs(u[m]) > 1.0) evanescent += e;
  }
  if (total > 0.0) {
    const double outside = (total - covered) / total;
    if (outside > 1e-12) {
      std::cerr << "apply_green: fraction " << outside
                << " of the spectral energy lies outside the sampled band ["
                << fmt17(g.grid().front()) << ", " << fmt17(g.grid().back())
                << "] and is dropped";
      if (evanescent > 0.0)
        std::cerr << " (including an evanescent share " << evanescent / total
                  << " past |ky| = k0)";
      std::cerr << '\n';
    }
  }
  if (g.spacing() > 0.5 * F.spacing() * (1.0 + 1e-12))
    std::cerr << "apply_green: transfer function sampled at " << g.spacing()
              << " per bin, coarser than half the spectral spacing "
              << F.spacing() << "; interpolation error may dominate\n";

  std::vector<cd> Hv(F.size());
  for (std::size_t m = 0; m < F.size(); ++m) Hv[m] = g.at(u[m]) * Fv[m];
  SampledField h = to_field(Spectrum(u, std::move(Hv)));

  if (!flip_output) return h;
  const std::size_t n = h.size();
  std::vector<cd> rev(n);
  rev[0] = h.values()[0];  // y = -span/2 is its own periodic mirror
  for (std::size_t j = 1; j < n; ++j) rev[j] = h.values()[n - j];
  return SampledField(h.grid(), std::move(rev));
}

SampledField derivative_oracle(const SampledField& f, DerivativeMethod m) {
  if (m == DerivativeMethod::spectral) {
    Spectrum F = to_spectrum(f);
    std::vector<cd> dv(F.size());
    for (std::size_t k = 0; k < F.size(); ++k)
      dv[k] = cd(0.0, 2.0 * std::numbers::pi * F.grid()[k]) * F.values()[k];
    return to_field(Spectrum(F.grid(), std::move(dv)));
  }
  const std::size_t n = f.size();
  const double dy = f.spacing();
  std::vector<cd> dv(n);
  for (std::size_t j = 0; j < n; ++j)
    dv[j] = (f.values()[(j + 1) % n] - f.values()[(j + n - 1) % n]) /
            (2.0 * dy);
  return SampledField(f.grid(), std::move(dv));
}

double measured_bandwidth(const Spectrum& F, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0))
    throw std::domain_error("measured_bandwidth: epsilon must lie in (0, 1], "
                            "got " +
                            fmt17(epsilon));
  double peak = 0.0;
  for (const auto& v : F.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0)
    throw std::domain_error("measured_bandwidth: all-zero spectrum");
  return bandwidth_of(F.grid(), F.values(), epsilon);
}

namespace {

void check_same_grid(const SampledField& a, const SampledField& b,
                     const char* who) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(who) + ": grids differ in size");
  const double tol =
      1e-12 * std::max(std::abs(a.grid().front()), std::abs(a.grid().back()));
  for (std::size_t j = 0; j < a.size(); ++j)
    if (std::abs(a.grid()[j] - b.grid()[j]) > tol)
      throw std::invalid_argument(std::string(who) +
                                  ": grids differ near index " +
                                  std::to_string(j));
}

}  // namespace

SampledField operator+(const SampledField& a, const SampledField& b) {
  check_same_grid(a, b, "operator+");
  std::vector<cd> v(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    v[j] = a.values()[j] + b.values()[j];
  return SampledField(a.grid(), std::move(v));
}

SampledField operator*(std::complex<double> c, const SampledField& f) {
  std::vector<cd> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = c * f.values()[j];
  return SampledField(f.grid(), std::move(v));
}

void write_csv(std::ostream& os, const SampledField& f) {
  os << "y_over_lambda0,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j)
    os << fmt17(f.grid()[j]) << ',' << fmt17(f.values()[j].real()) << ','
       << fmt17(f.values()[j].imag()) << '\n';
}

SampledField read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("read_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "y_over_lambda0,re,im")
    throw std::invalid_argument("read_csv: unexpected header '" + line + "'");

  std::vector<double> y;
  std::vector<cd> v;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double yy, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &yy, &re, &im) != 3)
      throw std::invalid_argument("read_csv: malformed row at line " +
                                  std::to_string(lineno));
    y.push_back(yy);
    v.emplace_back(re, im);
  }
  return SampledField(std::move(y), std::move(v));
}

}  // namespace brewster::field
