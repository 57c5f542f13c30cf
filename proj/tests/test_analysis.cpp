#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "brewster/analysis.hpp"
#include "oracles.hpp"

using namespace brewster;
using namespace brewster::analysis;
using doctest::Approx;
using cd = std::complex<double>;

TEST_CASE("spectral error between exact and linear transfer functions") {
  auto cfg = optics::OpticalConfig::at_brewster(2.1);
  auto grid = greens::symmetric_grid(0.09, 2001);
  auto exact = greens::exact_brewster_green(cfg, grid);
  auto taylor = greens::taylor_green(cfg, grid);

  CHECK(spectral_error(exact, taylor, 0.09) ==
        Approx(0.0987736310855268).epsilon(1e-9));
  // restriction to a narrower band shrinks the mismatch
  CHECK(spectral_error(exact, taylor, 0.05) <
        spectral_error(exact, taylor, 0.09));
  CHECK(spectral_error(exact, exact, 0.09) == 0.0);

  // only u = 0 falls inside a band below one grid step: the linear
  // reference vanishes there
  CHECK_THROWS_AS(spectral_error(exact, taylor, 1e-5), std::domain_error);
  CHECK_THROWS_AS(spectral_error(exact, taylor, 0.0), std::domain_error);

  auto smaller = greens::taylor_green(cfg, greens::symmetric_grid(0.09, 501));
  CHECK_THROWS_AS(spectral_error(exact, smaller, 0.09),
                  std::invalid_argument);
}

TEST_CASE("spatial error between beams") {
  auto f = field::make_gaussian(32.0, field::GridSpec{1024, 512.0});
  CHECK(spatial_error(f, f) == 0.0);
  CHECK(spatial_error(cd(2.0, 0.0) * f, f) == Approx(1.0).epsilon(1e-14));

  field::SampledField zero(f.grid(),
                           std::vector<cd>(f.size(), cd(0, 0)));
  CHECK_THROWS_AS(spatial_error(f, zero), std::domain_error);

  auto other = field::make_gaussian(32.0, field::GridSpec{512, 512.0});
  CHECK_THROWS_AS(spatial_error(f, other), std::invalid_argument);
}

TEST_CASE("widest usable band at a 10% budget") {
  const double w = max_bandwidth(2.1, 0.10);
  CHECK(w >= 0.09);
  CHECK(std::abs(w - 0.09108284028989577) < 2e-4);

  // the reported band indeed meets the budget, one step further does not
  auto cfg = optics::OpticalConfig::at_brewster(2.1);
  auto eg = [&](double band) {
    auto grid = greens::symmetric_grid(band, 2001);
    return spectral_error(greens::exact_brewster_green(cfg, grid),
                          greens::taylor_green(cfg, grid), band);
  };
  CHECK(eg(w) <= 0.10);
  CHECK(eg(w + 2e-4) > 0.10);
  CHECK(eg(w) == Approx(0.10).epsilon(1e-2));

  CHECK_THROWS_AS(max_bandwidth(2.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(max_bandwidth(2.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(max_bandwidth(0.9, 0.1), std::domain_error);
}

TEST_CASE("band search edge cases") {
  // a budget below the error at the smallest probe reports zero
  CHECK(max_bandwidth(2.1, 1e-6) == 0.0);
  // a budget above the error at the grazing limit reports the limit
  const double limit = std::cos(std::atan(2.1)) * (1.0 - 1e-9);
  CHECK(max_bandwidth(2.1, 0.99) == Approx(limit).epsilon(1e-12));
}

TEST_CASE("usable band across the index range") {
  const double w15 = max_bandwidth(1.5, 0.10);
  const double w21 = max_bandwidth(2.1, 0.10);
  const double w35 = max_bandwidth(3.5, 0.10);
  CHECK(w15 > 0.085);
  CHECK(w15 < 0.100);
  CHECK(w21 > 0.09);
  CHECK(w35 > 0.060);
  CHECK(w35 < 0.075);
}

TEST_CASE("flat-spectrum beams tie spectral and spatial error together") {
  auto cfg = optics::OpticalConfig::at_brewster(2.1);
  const double band = std::cos(cfg.theta) * (1.0 - 1e-9);
  auto grid = greens::symmetric_grid(band, 1763);
  auto exact = greens::exact_brewster_green(cfg, grid);
  auto taylor = greens::taylor_green(cfg, grid);

  field::GridSpec gs{16384, 512.0};
  auto [eg9, ef9] =
      parseval_error_identity_check(field::make_sinc(0.09, gs), exact, taylor);
  CHECK(eg9 == Approx(0.099).epsilon(0.07));
  CHECK(ef9 == Approx(0.099).epsilon(0.07));
  CHECK(std::abs(eg9 - ef9) <= 0.01);

  auto [eg5, ef5] =
      parseval_error_identity_check(field::make_sinc(0.05, gs), exact, taylor);
  CHECK(eg5 == Approx(0.054).epsilon(0.05));
  CHECK(ef5 == Approx(0.054).epsilon(0.05));
  CHECK(std::abs(eg5 - ef5) <= 0.002);
}

TEST_CASE("error report serializes deterministically") {
  ErrorReport r;
  r.e_G = 0.5;
  r.e_f = 0.25;
  r.n2 = 2.1;
  r.W = 0.1;
  r.grid = {16384, 512.0};
  r.conventions = {"full width at 1/e amplitude", "exp(-2 pi i ky y)", true};

  std::ostringstream plain;
  write_json(plain, r);
  CHECK(plain.str() ==
        "{\n"
        "  \"e_G\": 0.5,\n"
        "  \"e_f\": 0.25,\n"
        "  \"n2\": 2.1000000000000001,\n"
        "  \"W\": 0.10000000000000001,\n"
        "  \"grid\": {\n"
        "    \"points\": 16384,\n"
        "    \"span\": 512\n"
        "  },\n"
        "  \"conventions\": {\n"
        "    \"beamwidth_definition\": \"full width at 1/e amplitude\",\n"
        "    \"dft_sign\": \"exp(-2 pi i ky y)\",\n"
        "    \"flip_output\": true\n"
        "  }\n"
        "}\n");

  std::ostringstream with_bw;
  write_json(with_bw, r, {{"epsilon_1e-2", 0.041015625},
                          {"epsilon_1e-1", 0.029296875}});
  CHECK(with_bw.str().find("\"measured_bandwidth\": {\n"
                           "    \"epsilon_1e-1\": 0.029296875,\n"
                           "    \"epsilon_1e-2\": 0.041015625\n"
                           "  }") != std::string::npos);

  // identical rerun byte-for-byte
  std::ostringstream again;
  write_json(again, r);
  CHECK(again.str() == plain.str());
}
