// Command-line front end: filtering experiments, transfer-function
// tables, and the usable-band sweep.  Every output is deterministic:
// fixed column order, %.17g numbers, no timestamps, so reruns are
// byte-identical.
//
// Exit codes: 0 success, 1 bad usage or configuration, 2 numerical
// failure while computing.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "brewster/analysis.hpp"

namespace fs = std::filesystem;
using brewster::analysis::ErrorReport;
using brewster::field::SampledField;
using cd = std::complex<double>;

namespace {

constexpr const char* kBeamwidthNote =
    "beamwidth is the full 1/e amplitude width: f(y) = exp(-(y/w)^2) with "
    "w = beamwidth/2";
constexpr const char* kDftNote =
    "F(u) = dy * sum_j f(y_j) exp(-2 pi i u y_j), u = ky/k0, y in lambda0 "
    "units";

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ExperimentConfig {
  std::string signal = "gaussian";  // gaussian | sinc | file:PATH
  double n2 = 2.1;
  double lambda0 = 1.0;
  double beamwidth = 32.0;  // gaussian signals, lambda0 units
  double bandwidth = 0.09;  // sinc signals, k0 units
  std::size_t points = 16384;
  double span = 512.0;
  double band = 0.1;  // evaluation band W for the spectral error
  double tolerance = 0.10;
  bool flip_output = false;
  std::string outdir = ".";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Files are written last and all-or-nothing: a failure removes what was
// already on disk so a bad run leaves no partial results.
class OutputSet {
 public:
  void write(const fs::path& p, const std::string& content) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw UsageError("cannot open " + p.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw UsageError("short write on " + p.string());
    written_.push_back(p);
  }

  void rollback() {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    written_.clear();
  }

 private:
  std::vector<fs::path> written_;
};

SampledField mirrored(const SampledField& f) {
  std::vector<cd> v(f.size());
  v[0] = f.values()[0];
  for (std::size_t j = 1; j < f.size(); ++j) v[j] = f.values()[f.size() - j];
  return SampledField(f.grid(), std::move(v));
}

// Transfer functions are tabulated at no more than half the spectral bin
// of the experiment grid, the density apply_green expects.
std::vector<double> experiment_grid(double band, double span) {
  std::size_t m = static_cast<std::size_t>(std::ceil(4.0 * band * span)) + 1;
  if (m % 2 == 0) ++m;
  return brewster::greens::symmetric_grid(band, m);
}

nlohmann::json convention_block(bool flip_output) {
  return {{"beamwidth_definition", kBeamwidthNote},
          {"dft_sign", kDftNote},
          {"flip_output", flip_output},
          {"frequency_unit", "ky/k0"},
          {"length_unit", "lambda0"}};
}

std::string csv_of(const SampledField& f) {
  std::ostringstream os;
  brewster::field::write_csv(os, f);
  return os.str();
}

int run_simulate(const ExperimentConfig& cfg) {
  std::optional<brewster::optics::OpticalConfig> oc;
  std::optional<SampledField> f;
  double band_limit = 0.0;

  try {
    oc.emplace(1.0, cfg.n2, cfg.lambda0,
               brewster::optics::brewster_angle(cfg.n2));
    if (cfg.signal == "gaussian") {
      f.emplace(brewster::field::make_gaussian(
          cfg.beamwidth, {cfg.points, cfg.span}));
    } else if (cfg.signal == "sinc") {
      f.emplace(brewster::field::make_sinc(cfg.bandwidth,
                                           {cfg.points, cfg.span}));
    } else if (cfg.signal.rfind("file:", 0) == 0) {
      const std::string path = cfg.signal.substr(5);
      std::ifstream is(path);
      if (!is) throw UsageError("cannot read signal file " + path);
      f.emplace(brewster::field::read_csv(is));
    } else {
      throw UsageError("unknown signal '" + cfg.signal +
                       "' (expected gaussian, sinc, or file:PATH)");
    }
    band_limit = std::cos(oc->theta) * (1.0 - 1e-9);
    if (!(cfg.band > 0.0) || !(cfg.band <= band_limit))
      throw UsageError("band must lie in (0, " + fmt17(band_limit) +
                       "] for n2 = " + fmt17(cfg.n2) + ", got " +
                       fmt17(cfg.band));
    if (!(cfg.tolerance > 0.0) || !(cfg.tolerance < 1.0))
      throw UsageError("tolerance must lie in (0, 1), got " +
                       fmt17(cfg.tolerance));
    fs::create_directories(cfg.outdir);
    if (!fs::is_directory(cfg.outdir))
      throw UsageError("outdir is not a directory: " + cfg.outdir);
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 1;
  }

  ErrorReport report;
  std::map<std::string, double> bw;
  std::optional<SampledField> h, href;
  try {
    const auto grid = experiment_grid(band_limit, f->span());
    const auto exact = brewster::greens::exact_brewster_green(*oc, grid);
    const auto taylor = brewster::greens::taylor_green(*oc, grid);
    const double c = brewster::greens::derivative_scale(cfg.n2);

    h.emplace(brewster::field::apply_green(*f, exact, cfg.flip_output));
    auto deriv = brewster::field::derivative_oracle(
        *f, brewster::field::DerivativeMethod::spectral);
    auto ref = cd(0.0, c / (2.0 * std::numbers::pi)) * deriv;
    href.emplace(cfg.flip_output ? mirrored(ref) : std::move(ref));

    report.e_G = brewster::analysis::spectral_error(exact, taylor, cfg.band);
    report.e_f = brewster::analysis::spatial_error(*h, *href);
    report.n2 = cfg.n2;
    report.W = cfg.band;
    report.grid = {f->size(), f->span()};
    report.conventions = {kBeamwidthNote, kDftNote, cfg.flip_output};

    const auto F = brewster::field::to_spectrum(*f);
    bw["epsilon_1e-1"] = brewster::field::measured_bandwidth(F, 1e-1);
    bw["epsilon_1e-2"] = brewster::field::measured_bandwidth(F, 1e-2);
    bw["epsilon_1e-3"] = brewster::field::measured_bandwidth(F, 1e-3);
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 2;
  }

  OutputSet out;
  const fs::path dir(cfg.outdir);
  try {
    std::ostringstream rj;
    brewster::analysis::write_json(rj, report, bw);

    auto sidecar = [&](const char* file, const char* role) {
      nlohmann::json j{{"columns", "y_over_lambda0,re,im"},
                       {"conventions", convention_block(cfg.flip_output)},
                       {"file", file},
                       {"lambda0", cfg.lambda0},
                       {"n2", cfg.n2},
                       {"points", report.grid.points},
                       {"role", role},
                       {"signal", cfg.signal},
                       {"span", report.grid.span}};
      return j.dump(2) + "\n";
    };

    out.write(dir / "input.csv", csv_of(*f));
    out.write(dir / "input.csv.meta.json", sidecar("input.csv", "input"));
    out.write(dir / "output.csv", csv_of(*h));
    out.write(dir / "output.csv.meta.json",
              sidecar("output.csv", "reflected beam, exact transfer"));
    out.write(dir / "reference.csv", csv_of(*href));
    out.write(dir / "reference.csv.meta.json",
              sidecar("reference.csv", "scaled spectral derivative"));
    out.write(dir / "report.json", rj.str());
  } catch (const std::exception& e) {
    out.rollback();
    std::cerr << "simulate: " << e.what() << '\n';
    return 1;
  }

  std::cout << "signal " << cfg.signal << ", n2 = " << fmt17(cfg.n2)
            << ", Brewster tilt " << fmt17(oc->theta) << " rad\n";
  std::cout << "e_G(W = " << fmt17(cfg.band) << ") = " << fmt17(report.e_G)
            << '\n';
  std::cout << "e_f = " << fmt17(report.e_f) << "  (tolerance "
            << fmt17(cfg.tolerance) << ": "
            << (report.e_f <= cfg.tolerance ? "ok" : "exceeded") << ")\n";
  std::cout << "measured bandwidth: 1e-1 -> " << fmt17(bw["epsilon_1e-1"])
            << ", 1e-2 -> " << fmt17(bw["epsilon_1e-2"]) << ", 1e-3 -> "
            << fmt17(bw["epsilon_1e-3"]) << '\n';
  std::cout << "wrote input.csv output.csv reference.csv report.json in "
            << dir.string() << '\n';
  return 0;
}

int run_green_compare(double n2, double band, std::size_t points,
                      const std::string& output) {
  std::optional<brewster::optics::OpticalConfig> oc;
  try {
    oc.emplace(brewster::optics::OpticalConfig::at_brewster(n2));
    const double limit = std::cos(oc->theta);
    if (!(band > 0.0) || !(band < limit))
      throw UsageError("band must lie in (0, " + fmt17(limit) +
                       ") for n2 = " + fmt17(n2) + ", got " + fmt17(band));
    if (points < 3 || points % 2 == 0 || points > 200001)
      throw UsageError("points must be odd, in [3, 200001], got " +
                       std::to_string(points));
  } catch (const std::exception& e) {
    std::cerr << "green-compare: " << e.what() << '\n';
    return 1;
  }

  std::string table;
  double worst = 0.0;
  try {
    const auto grid = brewster::greens::symmetric_grid(band, points);
    const auto exact = brewster::greens::exact_brewster_green(*oc, grid);
    const auto taylor = brewster::greens::taylor_green(*oc, grid);

    std::ostringstream os;
    os << "ky_over_k0,exact_re,exact_im,taylor_re,taylor_im\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto ge = exact.samples()[i];
      const auto gt = taylor.samples()[i];
      worst = std::max(worst, std::abs(ge - gt));
      os << fmt17(grid[i]) << ',' << fmt17(ge.real()) << ',' << fmt17(ge.imag())
         << ',' << fmt17(gt.real()) << ',' << fmt17(gt.imag()) << '\n';
    }
    table = os.str();
  } catch (const std::exception& e) {
    std::cerr << "green-compare: " << e.what() << '\n';
    return 2;
  }

  OutputSet out;
  try {
    nlohmann::json meta{{"band", band},
                        {"columns", "ky_over_k0,exact_re,exact_im,taylor_re,"
                                    "taylor_im"},
                        {"file", fs::path(output).filename().string()},
                        {"n2", n2},
                        {"points", points}};
    out.write(output, table);
    out.write(output + ".meta.json", meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    out.rollback();
    std::cerr << "green-compare: " << e.what() << '\n';
    return 1;
  }

  std::cout << "wrote " << output << " (" << points << " rows, band "
            << fmt17(band) << ", max |exact - linear| = " << fmt17(worst)
            << ")\n";
  return 0;
}

int run_sweep(double n_min, double n_max, double n_step, double tolerance,
              const std::string& output) {
  std::size_t count = 0;
  try {
    if (!(n_min > 1.0))
      throw UsageError("n-min must exceed 1, got " + fmt17(n_min));
    if (!(n_max >= n_min))
      throw UsageError("n-max must be >= n-min");
    if (!(n_step > 0.0))
      throw UsageError("n-step must be positive, got " + fmt17(n_step));
    if (!(tolerance > 0.0) || !(tolerance < 1.0))
      throw UsageError("tolerance must lie in (0, 1), got " +
                       fmt17(tolerance));
    count = static_cast<std::size_t>((n_max - n_min) / n_step + 1e-9) + 1;
    if (count > 2000)
      throw UsageError("sweep would emit " + std::to_string(count) +
                       " rows; cap is 2000");
  } catch (const std::exception& e) {
    std::cerr << "sweep-bandwidth: " << e.what() << '\n';
    return 1;
  }

  std::string table;
  try {
    std::ostringstream os;
    os << "n,W_over_k0\n";
    for (std::size_t i = 0; i < count; ++i) {
      const double n = n_min + static_cast<double>(i) * n_step;
      os << fmt17(n) << ','
         << fmt17(brewster::analysis::max_bandwidth(n, tolerance)) << '\n';
    }
    table = os.str();
  } catch (const std::exception& e) {
    std::cerr << "sweep-bandwidth: " << e.what() << '\n';
    return 2;
  }

  OutputSet out;
  try {
    nlohmann::json meta{{"columns", "n,W_over_k0"},
                        {"file", fs::path(output).filename().string()},
                        {"n_max", n_max},
                        {"n_min", n_min},
                        {"n_step", n_step},
                        {"tolerance", tolerance}};
    out.write(output, table);
    out.write(output + ".meta.json", meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    out.rollback();
    std::cerr << "sweep-bandwidth: " << e.what() << '\n';
    return 1;
  }

  std::cout << "wrote " << output << " (" << count << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Brewster-reflection spatial differentiator: simulate the filtering "
      "of sampled beams, tabulate transfer functions, and sweep the usable "
      "band."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI file with a [simulate] section; command-line options "
                 "override it");
  app.allow_config_extras(false);

  ExperimentConfig cfg;
  auto* sim = app.add_subcommand(
      "simulate", "Filter a beam off the interface and report the errors");
  sim->configurable(true);
  sim->fallthrough(true);
  sim->add_option("--signal", cfg.signal, "gaussian, sinc, or file:PATH");
  sim->add_option("--n2", cfg.n2, "substrate refractive index (> 1)");
  sim->add_option("--lambda0", cfg.lambda0, "vacuum wavelength");
  sim->add_option("--beamwidth", cfg.beamwidth,
                  "gaussian full 1/e width, lambda0 units");
  sim->add_option("--bandwidth", cfg.bandwidth,
                  "sinc spectral half-width, k0 units");
  sim->add_option("--points", cfg.points, "grid points, power of two");
  sim->add_option("--span", cfg.span, "grid width, lambda0 units");
  sim->add_option("--band", cfg.band, "evaluation band W, k0 units");
  sim->add_option("--tolerance", cfg.tolerance, "error budget for reporting");
  sim->add_flag("--flip-output", cfg.flip_output,
                "mirror the output beam, h(y) -> h(-y)");
  sim->add_option("--outdir", cfg.outdir, "directory for result files");

  double gc_n2 = 2.1, gc_band = 0.3;
  std::size_t gc_points = 2001;
  std::string gc_output = "green.csv";
  auto* gc = app.add_subcommand(
      "green-compare", "Tabulate exact and linear transfer functions");
  gc->fallthrough(true);
  gc->add_option("--n2", gc_n2, "substrate refractive index (> 1)");
  gc->add_option("--band", gc_band, "band half-width, k0 units");
  gc->add_option("--points", gc_points, "samples across the band, odd");
  gc->add_option("--output", gc_output, "CSV path");

  double sw_min = 1.5, sw_max = 3.5, sw_step = 0.1, sw_tol = 0.10;
  std::string sw_output = "sweep.csv";
  auto* sw = app.add_subcommand(
      "sweep-bandwidth", "Usable band against the substrate index");
  sw->fallthrough(true);
  sw->add_option("--n-min", sw_min, "first index");
  sw->add_option("--n-max", sw_max, "last index");
  sw->add_option("--n-step", sw_step, "index increment");
  sw->add_option("--tolerance", sw_tol, "relative error budget");
  sw->add_option("--output", sw_output, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) return run_simulate(cfg);
  if (gc->parsed()) return run_green_compare(gc_n2, gc_band, gc_points,
                                             gc_output);
  return run_sweep(sw_min, sw_max, sw_step, sw_tol, sw_output);
}
