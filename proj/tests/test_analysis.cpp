#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "fdasim/analysis.hpp"
#include "fdasim/beampattern.hpp"
#include "fdasim/errors.hpp"

using namespace fdasim;
using Catch::Approx;

namespace {

constexpr double c0 = kRoundedSpeedOfLight;

PropagationEnv rounded_env() {
  PropagationEnv env;
  env.wave_speed_m_per_s = c0;
  return env;
}

ArrayConfig chebyshev_pa(std::size_t n = 15) {
  return make_phased_array(n, half_wavelength(10e9), 10e9, chebyshev_taper(n, 30),
                           std::vector<double>(n, 0.0));
}

ArrayConfig chebyshev_fda() {
  return make_fda(15, half_wavelength(10e9), 10e9, chebyshev_taper(15, 30),
                  std::vector<double>(15, 0.0), chebyshev_offsets(15, 5e3, 30));
}

RasterGrid hand_raster(std::size_t rows, std::size_t cols, std::vector<double> values) {
  RasterGrid r;
  r.spec.r_min_m = 1000.0;
  r.spec.r_max_m = 1000.0 + 10.0 * double(rows - 1);
  r.spec.n_range = rows;
  r.spec.theta_min_rad = -0.5;
  r.spec.theta_max_rad = 0.5;
  r.spec.n_theta = cols;
  r.values = std::move(values);
  return r;
}

}  // namespace

TEST_CASE("GridSpec sampling is uniform and inclusive") {
  GridSpec g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.range_at(0) == g.r_min_m);
  CHECK(g.range_at(g.n_range - 1) == g.r_max_m);
  CHECK(g.theta_at(0) == -kPi / 2);
  CHECK(g.theta_at(g.n_theta - 1) == kPi / 2);
  CHECK(g.range_step() == Approx(399e3 / 511));

  GridSpec bad = g;
  bad.r_min_m = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.r_max_m = bad.r_min_m;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.n_theta = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.theta_max_rad = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("single-element CW raster is flat") {
  const auto cfg = make_phased_array(1, 0.015, 10e9, {1.0}, {0.0});
  GridSpec g;
  g.n_range = 17;
  g.n_theta = 23;
  const auto r = evaluate_raster(cfg, PropagationEnv{}, std::nullopt, PatternMode::cw, g);
  CHECK(std::all_of(r.values.begin(), r.values.end(), [](double v) { return v == 1.0; }));
  const auto focus = find_focus(r);
  CHECK(focus.peak_row == 0);
  CHECK(focus.peak_col == 0);
  const auto cut = range_cut(r, 0.3);
  CHECK(std::all_of(cut.begin(), cut.end(), [](double v) { return v == 1.0; }));
}

TEST_CASE("CW Chebyshev raster has identical range rows") {
  GridSpec g;
  g.n_range = 64;
  g.n_theta = 128;
  g.t_s = 0.37e-3;
  const auto r = evaluate_raster(chebyshev_pa(), PropagationEnv{}, std::nullopt, PatternMode::cw, g);
  for (std::size_t i = 1; i < g.n_range; ++i) {
    for (std::size_t j = 0; j < g.n_theta; ++j) REQUIRE(r.at(i, j) == r.at(0, j));
  }
}

TEST_CASE("rect pulsed raster: one 81 km band around 300 km") {
  const auto env = rounded_env();
  const GridSpec g;  // 1-400 km, 512 x 512, t = 0
  const auto r =
      evaluate_raster(chebyshev_pa(), env, PulseSpec::rect(-1e-3, 0.27e-3), PatternMode::pulsed, g);
  for (std::size_t i = 0; i < g.n_range; ++i) {
    const double range = g.range_at(i);
    const bool inside = range > 259.5e3 && range <= 340.5e3;
    for (std::size_t j = 0; j < g.n_theta; ++j) {
      if (!inside) REQUIRE(r.at(i, j) == 0.0);
    }
    if (inside) CHECK(r.at(i, 255) > 0.0);
  }
  const auto f = find_focus(r);
  const double cell = g.range_step();
  CHECK(std::abs(f.range_extent_m - 81e3) <= cell);
  CHECK(std::abs(f.range_center_m - 300e3) <= cell);

  const auto cut = range_cut(r, f.peak_theta_rad);
  const double top = *std::max_element(cut.begin(), cut.end());
  CHECK(std::all_of(cut.begin(), cut.end(), [&](double v) { return v == 0.0 || v == top; }));
}

TEST_CASE("Gaussian pulsed raster range extent is c times the FWHM") {
  const auto env = rounded_env();
  const auto pulse = PulseSpec::gaussian(-1e-3, 0.15e-3);
  const GridSpec g;
  const auto f = find_focus(evaluate_raster(chebyshev_pa(), env, pulse, PatternMode::pulsed, g));

  // Dense 1-D oracle: half-maximum crossings of the envelope along range.
  double lo = 0.0, hi = 0.0;
  bool inside = false;
  for (double rr = 1e3; rr <= 400e3; rr += 1.0) {
    const bool above = envelope(pulse, -rr / c0) >= 0.5;
    if (above && !inside) lo = rr;
    if (above) hi = rr;
    inside = inside || above;
  }
  const double dense_extent = hi - lo;
  CHECK(dense_extent == Approx(105966.9).margin(2.0));
  CHECK(std::abs(f.range_extent_m - dense_extent) <= g.range_step());
  CHECK(std::abs(f.range_extent_m - c0 * fwhm(pulse)) <= g.range_step());
  CHECK(std::abs(f.peak_r_m - 300e3) <= g.range_step());
}

TEST_CASE("find_focus on hand-built rasters") {
  // Single nonzero cell.
  std::vector<double> v(5 * 7, 0.0);
  v[2 * 7 + 3] = 4.0;
  const auto single = hand_raster(5, 7, v);
  const auto f = find_focus(single);
  CHECK(f.peak_row == 2);
  CHECK(f.peak_col == 3);
  CHECK(f.peak_r_m == single.spec.range_at(2));
  CHECK(f.peak_theta_rad == Approx(single.spec.theta_at(3)));
  CHECK(f.peak_mag == 4.0);
  CHECK(f.range_extent_m == Approx(single.spec.range_step()));
  CHECK(f.theta_extent_rad == Approx(single.spec.theta_step()));

  // Ties: lowest range row, then lowest angle column.
  std::vector<double> tie(4 * 4, 1.0);
  tie[1 * 4 + 2] = 3.0;
  tie[1 * 4 + 3] = 3.0;
  tie[3 * 4 + 0] = 3.0;
  const auto t = find_focus(hand_raster(4, 4, tie));
  CHECK(t.peak_row == 1);
  CHECK(t.peak_col == 2);

  // Linear interpolation of the half-maximum crossing.
  const auto ramp = find_focus(hand_raster(5, 2, {0, 0, 1, 0, 2, 0, 1, 0, 0, 0}));
  CHECK(ramp.range_extent_m == Approx(20.0));

  CHECK_THROWS_AS(find_focus(hand_raster(3, 3, std::vector<double>(9, 0.0))), NoFocusError);
}

TEST_CASE("drift follows the wave speed for FDA and pulsed patterns") {
  const auto env = rounded_env();
  GridSpec g;
  g.n_range = 512;
  g.n_theta = 65;

  SECTION("pulsed Gaussian, dt = 0.1 ms") {
    g.r_min_m = 280e3;
    g.r_max_m = 350e3;
    const auto d = drift_estimate(chebyshev_pa(), env, PulseSpec::gaussian(-1e-3, 0.15e-3),
                                  PatternMode::pulsed, g, 0.0, 0.1e-3);
    CHECK(std::abs(d.speed_m_per_s - c0) <= g.range_step() / 0.1e-3);
    CHECK(d.angle_rate_rad_per_s == 0.0);
  }
  SECTION("Chebyshev-offset FDA, dt = 0.05 ms") {
    g.r_min_m = 290e3;
    g.r_max_m = 330e3;
    const auto d = drift_estimate(chebyshev_fda(), env, std::nullopt, PatternMode::fda_approx, g,
                                  1e-3, 1.05e-3);
    CHECK(std::abs(d.speed_m_per_s - c0) <= g.range_step() / 0.05e-3);
    CHECK(d.first.peak_theta_rad == 0.0);
  }
  SECTION("CW phased array does not move") {
    const auto d = drift_estimate(chebyshev_pa(), env, std::nullopt, PatternMode::cw, g, 0.0, 1e-3);
    CHECK(d.speed_m_per_s == 0.0);
  }
  SECTION("peak outside the window is reported") {
    g.r_min_m = 100e3;
    g.r_max_m = 200e3;
    CHECK_THROWS_AS(drift_estimate(chebyshev_pa(), env, PulseSpec::gaussian(-1e-3, 0.15e-3),
                                   PatternMode::pulsed, g, 0.0, 0.1e-3),
                    PeakEscapedError);
  }
  SECTION("equal times are rejected") {
    CHECK_THROWS_AS(drift_estimate(chebyshev_pa(), env, std::nullopt, PatternMode::cw, g, 1.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("range_cut extracts the nearest angle column") {
  const auto env = rounded_env();
  GridSpec g;
  g.r_min_m = 1e3;
  g.r_max_m = 200e3;
  g.n_range = 300;
  g.n_theta = 41;
  g.t_s = 0.4e-3;
  const auto cfg = make_fda_linear(8, half_wavelength(10e9), 10e9, 3e3, std::vector<double>(8, 1.0),
                                   std::vector<double>(8, 0.0));
  const auto r = evaluate_raster(cfg, env, std::nullopt, PatternMode::fda_approx, g);
  const auto cut = range_cut(r, 0.0);
  REQUIRE(cut.size() == g.n_range);
  for (std::size_t i = 0; i < g.n_range; ++i) {
    CHECK(cut[i] == std::abs(af_approx(cfg, env, {g.t_s, g.range_at(i), g.theta_at(20)})));
  }
  // Linear 3 kHz offsets repeat every c / 3 kHz = 100 km along range.
  for (std::size_t i = 0; i < g.n_range; ++i) {
    const double shifted = g.range_at(i) + 100e3;
    if (shifted > g.r_max_m) break;
    const double direct = std::abs(af_approx(cfg, env, {g.t_s, shifted, 0.0}));
    CHECK(direct == Approx(cut[i]).margin(1e-9));
  }

  CHECK_THROWS_AS(range_cut(r, 1.6), std::invalid_argument);
  CHECK_THROWS_AS(range_cut(r, -1.6), std::invalid_argument);
}

TEST_CASE("mode compatibility") {
  const PropagationEnv env;
  const GridSpec g;
  const auto fda = chebyshev_fda();
  const auto pa = chebyshev_pa();
  const auto pulse = PulseSpec::rect(-1e-3, 0.27e-3);
  CHECK_THROWS_AS(evaluate_raster(fda, env, pulse, PatternMode::pulsed, g), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_raster(pa, env, std::nullopt, PatternMode::pulsed, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_raster(fda, env, std::nullopt, PatternMode::cw, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_raster(fda, env, pulse, PatternMode::fda_approx, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_raster(pa, env, pulse, PatternMode::cw, g), std::invalid_argument);
  CHECK_NOTHROW(evaluate_raster(pa, env, PulseSpec::cw(), PatternMode::pulsed, GridSpec{1e3, 2e3, 4,
                                                                                     -1, 1, 4, 0}));
  CHECK(parse_mode("equivalent_pa") == PatternMode::equivalent_pa);
  CHECK_THROWS_AS(parse_mode("fda"), std::invalid_argument);
}

TEST_CASE("equivalent phased-array raster matches the FDA raster") {
  const auto env = rounded_env();
  GridSpec g;
  g.n_range = 96;
  g.n_theta = 96;
  g.t_s = 1e-3;
  const auto a = evaluate_raster(chebyshev_fda(), env, std::nullopt, PatternMode::fda_approx, g);
  const auto b = evaluate_raster(chebyshev_fda(), env, std::nullopt, PatternMode::equivalent_pa, g);
  const double wsum = chebyshev_fda().weight_sum();
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    REQUIRE(std::abs(a.values[k] - b.values[k]) <= 1e-12 * wsum);
  }
}

TEST_CASE("raster evaluation is deterministic and fingerprinted") {
  const auto env = rounded_env();
  GridSpec g;
  g.n_range = 50;
  g.n_theta = 70;
  g.t_s = 0.9e-3;
  const auto a = evaluate_raster(chebyshev_fda(), env, std::nullopt, PatternMode::fda_exact, g, 1);
  const auto b = evaluate_raster(chebyshev_fda(), env, std::nullopt, PatternMode::fda_exact, g, 3);
  const auto c = evaluate_raster(chebyshev_fda(), env, std::nullopt, PatternMode::fda_exact, g);
  CHECK(a.values == b.values);
  CHECK(a.values == c.values);
  CHECK(a.fingerprint == b.fingerprint);

  CHECK(fingerprint(chebyshev_fda(), env, std::nullopt) !=
        fingerprint(chebyshev_pa(), env, std::nullopt));
  CHECK(fingerprint(chebyshev_pa(), env, PulseSpec::rect(0, 1)) !=
        fingerprint(chebyshev_pa(), env, PulseSpec::gaussian(0, 1)));
  CHECK(fingerprint(chebyshev_pa(), env, PulseSpec::rect(0, 1)) !=
        fingerprint(chebyshev_pa(), PropagationEnv{}, PulseSpec::rect(0, 1)));
}
