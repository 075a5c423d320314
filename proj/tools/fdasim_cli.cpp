// fdasim: range-angle beampattern snapshots for frequency diverse and pulsed
// phased arrays.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 config error, 3 check failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fdasim/analysis.hpp"
#include "fdasim/errors.hpp"
#include "fdasim/property_checks.hpp"
#include "fdasim/raster_io.hpp"
#include "fdasim/run_config.hpp"

namespace fs = std::filesystem;
using namespace fdasim;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::string format = "both";
  std::string time;
  std::string mode;
  bool quiet = false;
};

struct Scenario {
  RunConfig config;
  ArrayConfig array;
  PropagationEnv env;
  std::optional<PulseSpec> pulse;
  PatternMode mode;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_outputs) {
  cmd->add_option("--config", o.config_path, "Run configuration file")->required();
  cmd->add_option("--set", o.overrides, "Override, e.g. --set grid.n_range=256");
  cmd->add_option("--time", o.time, "Snapshot time, e.g. 0.05ms (overrides grid.time)");
  cmd->add_option("--mode", o.mode, "cw | fda_exact | fda_approx | pulsed | equivalent_pa");
  cmd->add_flag("--quiet", o.quiet, "Do not echo applied defaults");
  if (with_outputs) {
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
    cmd->add_option("--format", o.format, "Raster file format")
        ->check(CLI::IsMember({"csv", "pgm", "both"}));
  }
}

Scenario load(const CommonOptions& o) {
  std::vector<std::string> overrides = o.overrides;
  if (!o.time.empty()) overrides.push_back("grid.time=" + o.time);
  const ParsedConfig parsed = parse_config(read_file(o.config_path), overrides);
  if (!o.quiet) {
    for (const auto& line : parsed.provenance) std::cerr << "# " << line << "\n";
  }
  const RunConfig& rc = parsed.config;
  std::optional<PulseSpec> pulse;
  if (!rc.pulse.is_cw()) pulse = rc.pulse;
  PatternMode mode = rc.default_mode();
  if (!o.mode.empty()) {
    try {
      mode = parse_mode(o.mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), 0, "--mode");
    }
  }
  return {rc, rc.build_array(), rc.build_env(), pulse, mode};
}

std::string focus_line(const RasterGrid& raster) {
  char buf[384];
  try {
    const FocusReport f = find_focus(raster);
    std::snprintf(buf, sizeof buf,
                  "mode=%s t_s=%.9g peak_r_m=%.9g peak_theta_deg=%.9g peak_mag=%.9g "
                  "range_extent_m=%.9g range_center_m=%.9g theta_extent_deg=%.9g",
                  std::string(to_string(raster.mode)).c_str(), raster.spec.t_s, f.peak_r_m,
                  f.peak_theta_rad * 180.0 / kPi, f.peak_mag, f.range_extent_m, f.range_center_m,
                  f.theta_extent_rad * 180.0 / kPi);
  } catch (const NoFocusError&) {
    std::snprintf(buf, sizeof buf, "mode=%s t_s=%.9g no_focus=1",
                  std::string(to_string(raster.mode)).c_str(), raster.spec.t_s);
  }
  return buf;
}

void write_outputs(const RasterGrid& raster, const Scenario& s, const CommonOptions& o,
                   const std::string& stem) {
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  if (o.format == "csv" || o.format == "both") {
    export_csv(raster, s.config.output.csv_db, s.config.output.db_floor, dir / (stem + ".csv"));
  }
  if (o.format == "pgm" || o.format == "both") {
    const auto status = export_image(raster, s.config.output.db_floor, dir / (stem + ".pgm"));
    if (status.all_floor) {
      std::cerr << "warning: raster has no energy; " << stem << ".pgm is all floor\n";
    }
  }
}

int run_snapshot(const CommonOptions& o) {
  const Scenario s = load(o);
  const RasterGrid raster = evaluate_raster(s.array, s.env, s.pulse, s.mode, s.config.grid);
  write_outputs(raster, s, o, s.config.output.stem);
  std::cout << focus_line(raster) << "\n";
  return 0;
}

int run_sweep(const CommonOptions& o, const std::vector<std::string>& times) {
  const Scenario s = load(o);
  std::vector<double> ts;
  for (const auto& t : times) {
    try {
      ts.push_back(parse_quantity(t, Quantity::time));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--times: ") + e.what(), 0, "--times");
    }
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    GridSpec g = s.config.grid;
    g.t_s = ts[k];
    const RasterGrid raster = evaluate_raster(s.array, s.env, s.pulse, s.mode, g);
    char stem[256];
    std::snprintf(stem, sizeof stem, "%s_%03zu", s.config.output.stem.c_str(), k);
    write_outputs(raster, s, o, stem);
    std::cout << "index=" << k << " " << focus_line(raster) << "\n";
  }
  return 0;
}

int run_compare(const CommonOptions& o, const std::string& mode_a, const std::string& mode_b,
                std::optional<double> tolerance) {
  const Scenario s = load(o);
  PatternMode a, b;
  try {
    a = parse_mode(mode_a);
    b = parse_mode(mode_b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0, "mode");
  }
  const RasterGrid ra = evaluate_raster(s.array, s.env, s.pulse, a, s.config.grid);
  const RasterGrid rb = evaluate_raster(s.array, s.env, s.pulse, b, s.config.grid);
  double max_diff = 0.0;
  std::size_t where = 0;
  for (std::size_t k = 0; k < ra.values.size(); ++k) {
    const double d = std::abs(ra.values[k] - rb.values[k]);
    if (d > max_diff) {
      max_diff = d;
      where = k;
    }
  }
  const double wsum = s.array.weight_sum();
  const auto& g = s.config.grid;
  std::printf("compare %s vs %s: max_abs_diff=%.9g relative=%.9g weight_sum=%.9g "
              "at_r_m=%.9g at_theta_deg=%.9g\n",
              mode_a.c_str(), mode_b.c_str(), max_diff, max_diff / wsum, wsum,
              g.range_at(where / g.n_theta), g.theta_at(where % g.n_theta) * 180.0 / kPi);
  if (tolerance && max_diff > *tolerance * wsum) {
    std::printf("FAIL relative difference exceeds %.3g\n", *tolerance);
    return kExitCheck;
  }
  return 0;
}

int run_check(std::uint64_t seed, std::size_t trials) {
  const auto results = run_property_checks(seed, trials);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s  %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%zu checks, %s\n", results.size(), all ? "all passed" : "FAILURES");
  return all ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-angle beampatterns of frequency diverse and pulsed phased arrays"};
  app.require_subcommand(1);

  CommonOptions snap_opts, sweep_opts, cmp_opts;
  auto* snapshot = app.add_subcommand("snapshot", "Evaluate one raster and report its focus");
  add_common(snapshot, snap_opts, true);

  auto* sweep = app.add_subcommand("sweep", "Evaluate rasters at a list of times");
  add_common(sweep, sweep_opts, true);
  std::vector<std::string> times;
  sweep->add_option("--times", times, "Snapshot times, e.g. 0,0.05ms,0.1ms")
      ->required()
      ->delimiter(',');

  auto* compare = app.add_subcommand("compare", "Max |difference| between two modes on one grid");
  add_common(compare, cmp_opts, false);
  std::string mode_a, mode_b;
  compare->add_option("first", mode_a, "First mode")->required();
  compare->add_option("second", mode_b, "Second mode")->required();
  std::optional<double> tolerance;
  compare->add_option("--tolerance", tolerance,
                      "Fail (exit 3) when max diff exceeds tolerance x sum of weights");

  auto* check = app.add_subcommand("check", "Run the built-in property suite");
  std::uint64_t seed = 0x5eed;
  std::size_t trials = 500;
  check->add_option("--seed", seed, "Random seed");
  check->add_option("--trials", trials, "Trials per point-wise property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*snapshot) return run_snapshot(snap_opts);
    if (*sweep) return run_sweep(sweep_opts, times);
    if (*compare) return run_compare(cmp_opts, mode_a, mode_b, tolerance);
    if (*check) return run_check(seed, trials);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
