#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "brewster/field.hpp"
#include "oracles.hpp"

using namespace brewster;
using namespace brewster::field;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const GridSpec kDefault{16384, 512.0};  // dy = 1/32, du = 1/512

double max_abs_diff(const SampledField& a, const SampledField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a.values()[j] - b.values()[j]));
  return m;
}

double max_abs(const SampledField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// Scoped stderr redirect, for checking the warning paths.
struct CerrCapture {
  std::ostringstream buf;
  std::streambuf* old;
  CerrCapture() : old(std::cerr.rdbuf(buf.rdbuf())) {}
  ~CerrCapture() { std::cerr.rdbuf(old); }
};

greens::GreensFunction identity_green() {
  auto grid = greens::symmetric_grid(1.0, 4097);
  return greens::GreensFunction(grid,
                                std::vector<cd>(grid.size(), cd(1.0, 0.0)));
}

}  // namespace

TEST_CASE("grid shape and validation") {
  CHECK(kDefault.spacing() == 0.03125);
  auto y = kDefault.make_y();
  CHECK(y.size() == 16384);
  CHECK(y[8192] == 0.0);
  CHECK(y.front() == -256.0);
  CHECK(y.back() == 256.0 - 0.03125);

  CHECK_THROWS_AS((GridSpec{1000, 512.0}.make_y()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{128, 512.0}.make_y()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1u << 21, 512.0}.make_y()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1024, 0.0}.make_y()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1024, -5.0}.make_y()), std::invalid_argument);
}

TEST_CASE("field and spectrum constructors reject malformed grids") {
  auto y = kDefault.make_y();
  std::vector<cd> v(y.size(), cd(1, 0));
  CHECK_NOTHROW(SampledField(y, v));

  auto short_v = v;
  short_v.pop_back();
  CHECK_THROWS_AS(SampledField(y, short_v), std::invalid_argument);

  auto shifted = y;
  for (auto& x : shifted) x += 0.015;  // no sample at y = 0 any more
  CHECK_THROWS_AS(SampledField(shifted, v), std::invalid_argument);

  auto bent = y;
  bent[100] += 0.01;
  CHECK_THROWS_AS(SampledField(bent, v), std::invalid_argument);
}

TEST_CASE("generator profiles match their formulas") {
  auto g = make_gaussian(32.0, kDefault);
  const auto& y = g.grid();
  CHECK(g.values()[8192] == cd(1.0, 0.0));
  for (std::size_t j : {4096u, 8192u, 8704u, 12288u}) {
    const double t = y[j] / 16.0;  // half-width of a 32 lambda0 beam
    CHECK(g.values()[j].real() == Approx(std::exp(-t * t)).epsilon(1e-15));
    CHECK(g.values()[j].imag() == 0.0);
  }

  auto s = make_sinc(0.09, kDefault);
  CHECK(s.values()[8192] == cd(1.0, 0.0));
  for (std::size_t j : {100u, 5000u, 9000u, 16000u}) {
    const double x = 2.0 * kPi * 0.09 * y[j];
    CHECK(s.values()[j].real() == Approx(std::sin(x) / x).epsilon(1e-15));
  }

  CHECK_THROWS_AS(make_gaussian(0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(make_gaussian(-3.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(make_sinc(0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(make_sinc(1.0, kDefault), std::domain_error);
}

TEST_CASE("transform round trip and Parseval") {
  auto g = make_gaussian(32.0, kDefault);
  auto s = make_sinc(0.09, kDefault);

  // complex mixture exercises both quadratures
  std::vector<cd> mix(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    mix[j] = g.values()[j] + cd(0.0, 0.3) * s.values()[j];
  SampledField f(g.grid(), mix);

  for (const auto* field : {&g, &s, &f}) {
    auto F = to_spectrum(*field);
    auto back = to_field(F);
    CHECK(max_abs_diff(*field, back) < 1e-12);

    double space = 0.0, freq = 0.0;
    for (const auto& v : field->values()) space += std::norm(v);
    for (const auto& v : F.values()) freq += std::norm(v);
    space *= field->spacing();
    freq *= F.spacing();
    CHECK(space == Approx(freq).epsilon(1e-10));
  }
}

TEST_CASE("gaussian spectrum is the reciprocal-width gaussian") {
  auto f = make_gaussian(32.0, kDefault);
  auto F = to_spectrum(f);
  const auto& u = F.grid();
  const std::size_t n = F.size(), h = n / 2;
  const double w = 16.0;
  const double peak = std::abs(F.values()[h]);

  CHECK(F.values()[h].real() ==
        Approx(w * std::sqrt(kPi)).epsilon(1e-12));  // w sqrt(pi) at u = 0
  for (std::size_t m = h - 40; m <= h + 40; ++m) {
    CHECK(std::abs(F.values()[m].imag()) < 1e-13 * peak);  // real
    CHECK(F.values()[m].real() > -1e-13 * peak);           // positive
    CHECK(std::abs(F.values()[m] - F.values()[n - m]) <
          1e-13 * peak);  // even
    const double expect = std::exp(-kPi * kPi * w * w * u[m] * u[m]);
    CHECK(F.values()[m].real() / peak == Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("measured bandwidth of the gaussian beam") {
  auto F = to_spectrum(make_gaussian(32.0, kDefault));
  // bin-exact values on the du = 1/512 grid
  CHECK(measured_bandwidth(F, 1e-1) == Approx(0.029296875).epsilon(1e-15));
  CHECK(measured_bandwidth(F, 1e-2) == Approx(0.041015625).epsilon(1e-15));
  CHECK(measured_bandwidth(F, 1e-3) == Approx(0.05078125).epsilon(1e-15));
  CHECK(F.bandwidth_w() == Approx(0.041015625).epsilon(1e-15));

  // grows like sqrt(log(1/eps)), always within one bin of the closed form
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double ideal = std::sqrt(std::log(1.0 / eps)) / (kPi * 16.0);
    const double got = measured_bandwidth(F, eps);
    CHECK(got <= ideal + 1e-15);
    CHECK(got > ideal - F.spacing());
  }

  CHECK(measured_bandwidth(F, 1.0) == 0.0);  // nothing clears the peak
  CHECK_THROWS_AS(measured_bandwidth(F, 0.0), std::domain_error);
  CHECK_THROWS_AS(measured_bandwidth(F, 1.5), std::domain_error);

  Spectrum zero(F.grid(), std::vector<cd>(F.size(), cd(0, 0)));
  CHECK(zero.bandwidth_w() == 0.0);
  CHECK_THROWS_AS(measured_bandwidth(zero, 0.5), std::domain_error);
}

TEST_CASE("rectangular spectrum round trip") {
  auto probe = to_spectrum(make_gaussian(32.0, kDefault));
  std::vector<cd> rect(probe.size(), cd(0, 0));
  std::size_t inside = 0;
  for (std::size_t m = 0; m < probe.size(); ++m)
    if (std::abs(probe.grid()[m]) <= 0.09) {
      rect[m] = cd(1, 0);
      ++inside;
    }
  Spectrum R(probe.grid(), rect);
  CHECK(R.bandwidth_w() == Approx(0.08984375).epsilon(1e-15));  // bin 46

  auto f = to_field(R);
  CHECK(f.values()[f.size() / 2].real() ==
        Approx(static_cast<double>(inside) * R.spacing()).epsilon(1e-12));
}

TEST_CASE("derivative oracles agree across routes") {
  // tone with an integer number of cycles over the window stays exact
  const double ua = 26.0 / 512.0;
  auto y = kDefault.make_y();
  std::vector<cd> tone(y.size());
  for (std::size_t j = 0; j < y.size(); ++j)
    tone[j] = {std::sin(2.0 * kPi * ua * y[j]), 0.0};
  SampledField f(y, tone);

  auto ds = derivative_oracle(f, DerivativeMethod::spectral);
  const double a = 2.0 * kPi * ua;
  double worst = 0.0, worst_imag = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    worst = std::max(worst,
                     std::abs(ds.values()[j].real() - a * std::cos(a * y[j])));
    worst_imag = std::max(worst_imag, std::abs(ds.values()[j].imag()));
  }
  CHECK(worst < 1e-8);
  CHECK(worst_imag < 1e-10);

  auto dc = derivative_oracle(f, DerivativeMethod::central_difference);
  CHECK(max_abs_diff(ds, dc) < 1e-4 * max_abs(ds));

  // same cross-check on the smooth beam
  auto g = make_gaussian(32.0, kDefault);
  auto gs = derivative_oracle(g, DerivativeMethod::spectral);
  auto gc = derivative_oracle(g, DerivativeMethod::central_difference);
  CHECK(max_abs_diff(gs, gc) < 1e-4 * max_abs(gs));
  double worst_cf = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j)
    worst_cf = std::max(worst_cf,
                        std::abs(gs.values()[j].real() -
                                 oracles::gaussian_derivative(y[j], 16.0)));
  CHECK(worst_cf < 1e-10);
}

TEST_CASE("identity filter is transparent") {
  auto f = make_gaussian(32.0, kDefault);
  CerrCapture cap;
  auto h = apply_green(f, identity_green());
  CHECK(max_abs_diff(f, h) < 1e-12);
  CHECK(cap.buf.str().empty());  // nothing to warn about
}

TEST_CASE("filtering is linear") {
  auto cfg = optics::OpticalConfig::at_brewster(2.1);
  auto g = greens::exact_brewster_green(
      cfg, greens::symmetric_grid(std::cos(cfg.theta) * (1.0 - 1e-9), 1763));

  auto fa = make_gaussian(32.0, kDefault);
  auto fb = make_sinc(0.09, kDefault);
  const cd alpha(0.3, -0.2);
  const cd beta(1.1, 0.0);

  CerrCapture cap;  // the sinc truncation tail trips the band warning
  auto lhs = apply_green(alpha * fa + beta * fb, g);
  auto rhs = alpha * apply_green(fa, g) + beta * apply_green(fb, g);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12 * max_abs(lhs));
}

TEST_CASE("ideal differentiator reproduces the scaled derivative") {
  auto f = make_gaussian(32.0, kDefault);
  auto g = greens::ideal_differentiator_green(cd(1.0, 0.0),
                                              greens::symmetric_grid(1.0, 4097));
  auto h = apply_green(f, g);
  // G = i u realizes (1/k0) d/dy with k0 = 2 pi at lambda0 = 1
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    worst = std::max(
        worst, std::abs(h.values()[j].real() -
                        oracles::gaussian_derivative(f.grid()[j], 16.0) /
                            (2.0 * kPi)));
  CHECK(worst < 1e-10);
}

TEST_CASE("out-of-band energy is dropped with a warning") {
  auto f = make_sinc(0.09, kDefault);
  auto narrow = greens::GreensFunction(
      greens::symmetric_grid(0.05, 205),
      std::vector<cd>(205, cd(1.0, 0.0)));

  CerrCapture cap;
  auto h = apply_green(f, narrow);
  CHECK(cap.buf.str().find("outside the sampled band") != std::string::npos);

  auto H = to_spectrum(h);
  double kept = 0.0, cut = 0.0;
  for (std::size_t m = 0; m < H.size(); ++m) {
    if (std::abs(H.grid()[m]) <= 0.05)
      kept += std::norm(H.values()[m]);
    else
      cut += std::norm(H.values()[m]);
  }
  CHECK(kept > 0.0);
  CHECK(cut < 1e-20 * kept);  // zero-filled outside the filter band
}

TEST_CASE("coarse transfer-function sampling warns") {
  auto f = make_gaussian(32.0, kDefault);
  auto coarse = greens::GreensFunction(
      greens::symmetric_grid(1.0, 257), std::vector<cd>(257, cd(1.0, 0.0)));
  CerrCapture cap;
  apply_green(f, coarse);
  CHECK(cap.buf.str().find("coarser") != std::string::npos);
}

TEST_CASE("flipped output is the periodic mirror") {
  // asymmetric profile so the flip actually moves data
  auto y = kDefault.make_y();
  std::vector<cd> v(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double t = (y[j] - 20.0) / 16.0;
    v[j] = {std::exp(-t * t), 0.0};
  }
  SampledField f(y, v);

  auto plain = apply_green(f, identity_green(), false);
  auto flip = apply_green(f, identity_green(), true);
  const std::size_t n = plain.size();
  CHECK(flip.values()[0] == plain.values()[0]);
  for (std::size_t j = 1; j < n; ++j)
    CHECK(flip.values()[j] == plain.values()[n - j]);
}

TEST_CASE("pointwise field arithmetic") {
  auto a = make_gaussian(32.0, kDefault);
  auto b = make_sinc(0.09, kDefault);
  auto sum = a + b;
  auto scaled = cd(0.0, 2.0) * a;
  for (std::size_t j : {0u, 77u, 8192u, 16383u}) {
    CHECK(sum.values()[j] == a.values()[j] + b.values()[j]);
    CHECK(scaled.values()[j] == cd(0.0, 2.0) * a.values()[j]);
  }
  auto other = make_gaussian(32.0, GridSpec{1024, 512.0});
  CHECK_THROWS_AS(a + other, std::invalid_argument);
}

TEST_CASE("CSV round trip is bit exact") {
  auto f = make_gaussian(32.0, GridSpec{256, 64.0});
  std::stringstream ss;
  write_csv(ss, f);
  auto back = read_csv(ss);
  REQUIRE(back.size() == f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(back.grid()[j] == f.grid()[j]);
    CHECK(back.values()[j] == f.values()[j]);
  }

  std::istringstream bad_header("y,re,im\n0,1,0\n");
  CHECK_THROWS_AS(read_csv(bad_header), std::invalid_argument);
  std::istringstream bad_row("y_over_lambda0,re,im\n0,1\n");
  CHECK_THROWS_AS(read_csv(bad_row), std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), std::invalid_argument);
}
