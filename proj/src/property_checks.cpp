#include "fdasim/property_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "fdasim/analysis.hpp"

namespace fdasim {

ArrayConfig RandomInputs::array(std::size_t max_elements, double max_offset_hz) {
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_elements)(rng);
  std::vector<double> w(n), phi(n), df(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = uniform(0.05, 1.0);
    phi[i] = uniform(-kPi, kPi);
    df[i] = max_offset_hz > 0.0 ? uniform(-max_offset_hz, max_offset_hz) : 0.0;
  }
  return make_fda(n, uniform(0.004, 0.1), uniform(1.0e9, 3.0e10), std::move(w), std::move(phi),
                  std::move(df));
}

PropagationEnv RandomInputs::env() {
  PropagationEnv e;
  e.wave_speed_m_per_s = uniform(0.5, 1.0) * kSpeedOfLight;
  return e;
}

FieldPoint RandomInputs::point() {
  return {uniform(-5.0e-3, 5.0e-3), uniform(1.0e3, 500.0e3), uniform(-kPi / 2.0, kPi / 2.0)};
}

namespace {

std::string format_worst(double worst, double limit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst %.3e (limit %.1e)", worst, limit);
  return buf;
}

// Tracks the largest normalized violation ratio across trials.
struct Worst {
  double value = 0.0;
  void update(double v) { value = std::max(value, v); }
};

CheckResult translation_identity(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array();
    const auto env = in.env();
    const auto p = in.point();
    const double c = env.wave_speed_m_per_s;
    const double shift = in.uniform(-0.5 * p.r_m / c, 5.0e-3);
    const FieldPoint q{p.t_s + shift, p.r_m + c * shift, p.theta_rad};
    worst.update(std::abs(af_approx(cfg, env, q) - af_approx(cfg, env, p)) / cfg.weight_sum());
  }
  return {"translation identity af(t+d, r+cd) = af(t, r)", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult zero_offset_invariance(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array(24, 0.0);
    const auto env = in.env();
    const auto p = in.point();
    const auto q = FieldPoint{in.uniform(-5e-3, 5e-3), in.uniform(1e3, 500e3), p.theta_rad};
    const double s = cfg.weight_sum();
    worst.update(std::abs(af_approx(cfg, env, q) - af_approx(cfg, env, p)) / s);
    worst.update(std::abs(af_exact(cfg, env, q) - af_exact(cfg, env, p)) / s);
  }
  return {"zero-offset arrays are time and range invariant", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult equivalence_identity(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array();
    const auto env = in.env();
    const auto p = in.point();
    const auto pa = cfg.as_phased_array(equivalent_phases(cfg, env, p.t_s, p.r_m));
    for (int a = 0; a < 4; ++a) {
      const FieldPoint q{p.t_s, p.r_m, in.uniform(-kPi / 2.0, kPi / 2.0)};
      worst.update(std::abs(af_approx(pa, env, q) - af_approx(cfg, env, q)) / cfg.weight_sum());
    }
  }
  return {"FDA equals phased array with equivalent phases", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult triangle_bound(RandomInputs& in, std::size_t trials) {
  Worst excess;
  Worst equality_gap;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array();
    const auto env = in.env();
    const auto p = in.point();
    const double s = cfg.weight_sum();
    excess.update((std::abs(af_exact(cfg, env, p)) - s) / s);
    excess.update((std::abs(af_approx(cfg, env, p)) - s) / s);

    const auto flat = cfg.as_phased_array(std::vector<double>(cfg.size(), 0.0));
    const FieldPoint focus{p.r_m / env.wave_speed_m_per_s, p.r_m, 0.0};
    equality_gap.update(std::abs(std::abs(af_approx(flat, env, focus)) - s) / s);
  }
  const bool ok = excess.value <= 1e-12 && equality_gap.value <= 1e-12;
  return {"|af| <= sum of weights, equality at broadside focus", ok,
          "excess " + format_worst(excess.value, 1e-12) + ", equality " +
              format_worst(equality_gap.value, 1e-12)};
}

CheckResult exact_vs_approx_bound(RandomInputs& in, std::size_t trials) {
  Worst ratio;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array(24, 5.0e6);
    const auto env = in.env();
    const auto p = in.point();
    const auto w = cfg.weights();
    const auto df = cfg.freq_offsets_hz();
    double bound = 0.0;
    for (std::size_t n = 0; n < cfg.size(); ++n) {
      bound += w[n] * kTwoPi * std::abs(df[n]) * static_cast<double>(n) * cfg.spacing_m() /
               env.wave_speed_m_per_s;
    }
    const double diff = std::abs(af_exact(cfg, env, p) - af_approx(cfg, env, p));
    // Allow rounding noise on top of the analytic bound.
    ratio.update(diff - bound - 1e-12 * cfg.weight_sum() > 0.0 ? diff / (bound + 1e-300) : 0.0);
  }
  return {"|af_exact - af_approx| <= sum w 2pi|df| n d / c", ratio.value == 0.0,
          ratio.value == 0.0 ? "bound held on every trial"
                             : "bound exceeded, ratio " + std::to_string(ratio.value)};
}

CheckResult symmetric_parity(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 24)(in.rng);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) w[i] = w[n - 1 - i] = in.uniform(0.05, 1.0);
    const auto cfg = make_phased_array(n, in.uniform(0.004, 0.1), in.uniform(1e9, 3e10), w,
                                       std::vector<double>(n, 0.0));
    const auto env = in.env();
    auto p = in.point();
    const double pos = std::abs(af_approx(cfg, env, p));
    p.theta_rad = -p.theta_rad;
    worst.update(std::abs(pos - std::abs(af_approx(cfg, env, p))) / cfg.weight_sum());
  }
  return {"symmetric weights give |AF(theta)| = |AF(-theta)|", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult pulsed_separability(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array(24, 0.0);
    const auto env = in.env();
    const auto pulse = PulseSpec::gaussian(in.uniform(-2e-3, 0.0), in.uniform(0.02e-3, 0.5e-3));
    const double t = in.uniform(-1e-3, 1e-3);
    const double th1 = in.uniform(-kPi / 2, kPi / 2);
    const double th2 = in.uniform(-kPi / 2, kPi / 2);
    const double a1 = std::abs(af_approx(cfg, env, {t, 1.0, th1}));
    const double a2 = std::abs(af_approx(cfg, env, {t, 1.0, th2}));
    const double s = cfg.weight_sum();
    for (int m = 0; m < 8; ++m) {
      const double r = in.uniform(1e3, 900e3);
      const double p1 = std::abs(pulsed_pattern(cfg, env, pulse, {t, r, th1}));
      const double p2 = std::abs(pulsed_pattern(cfg, env, pulse, {t, r, th2}));
      worst.update(std::abs(p1 * a2 - p2 * a1) / (s * s));
    }
  }
  return {"pulsed pattern separates into envelope x AF(theta)", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

GridSpec small_grid(RandomInputs& in, double t) {
  GridSpec g;
  g.r_min_m = in.uniform(1e3, 200e3);
  g.r_max_m = g.r_min_m + in.uniform(10e3, 300e3);
  g.n_range = 40;
  g.theta_min_rad = -kPi / 2;
  g.theta_max_rad = kPi / 2;
  g.n_theta = 33;
  g.t_s = t;
  return g;
}

CheckResult raster_determinism(RandomInputs& in, std::size_t trials) {
  bool ok = true;
  for (std::size_t k = 0; k < trials && ok; ++k) {
    const auto cfg = in.array();
    const auto env = in.env();
    const auto g = small_grid(in, in.uniform(-1e-3, 1e-3));
    const auto a = evaluate_raster(cfg, env, std::nullopt, PatternMode::fda_exact, g, 1);
    const auto b = evaluate_raster(cfg, env, std::nullopt, PatternMode::fda_exact, g, 7);
    ok = a.values == b.values && a.fingerprint == b.fingerprint;
  }
  return {"raster evaluation is bit-identical across runs and worker counts", ok,
          ok ? "identical" : "rasters differ"};
}

CheckResult raster_translation(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto env = in.env();
    const double c = env.wave_speed_m_per_s;
    const bool pulsed = k % 2 == 1;
    const auto cfg = in.array(16, pulsed ? 0.0 : 20e3);
    const std::optional<PulseSpec> pulse =
        pulsed ? std::optional(PulseSpec::gaussian(-0.5e-3, 0.1e-3)) : std::nullopt;
    const auto mode = pulsed ? PatternMode::pulsed : PatternMode::fda_approx;
    auto g = small_grid(in, in.uniform(-1e-3, 1e-3));
    const double shift = in.uniform(0.0, 2e-3);
    const auto a = evaluate_raster(cfg, env, pulse, mode, g);
    g.t_s += shift;
    g.r_min_m += c * shift;
    g.r_max_m += c * shift;
    const auto b = evaluate_raster(cfg, env, pulse, mode, g);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      worst.update(std::abs(a.values[i] - b.values[i]) / cfg.weight_sum());
    }
  }
  return {"raster at t+d with ranges shifted by c*d reproduces the t raster", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult cw_range_invariance(RandomInputs& in, std::size_t trials) {
  Worst worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto cfg = in.array(24, 0.0);
    const auto env = in.env();
    const auto r = evaluate_raster(cfg, env, std::nullopt, PatternMode::cw,
                                   small_grid(in, in.uniform(-1e-3, 1e-3)));
    for (std::size_t j = 0; j < r.spec.n_theta; ++j) {
      for (std::size_t i = 1; i < r.spec.n_range; ++i) {
        worst.update(std::abs(r.at(i, j) - r.at(0, j)) / cfg.weight_sum());
      }
    }
  }
  return {"cw phased-array rasters do not vary along range", worst.value <= 1e-12,
          format_worst(worst.value, 1e-12)};
}

CheckResult focus_is_global_max(RandomInputs& in, std::size_t trials) {
  bool ok = true;
  for (std::size_t k = 0; k < trials && ok; ++k) {
    const auto cfg = in.array(16, 20e3);
    const auto env = in.env();
    const auto r = evaluate_raster(cfg, env, std::nullopt, PatternMode::fda_approx,
                                   small_grid(in, in.uniform(-1e-3, 1e-3)));
    const auto rep = find_focus(r);
    double best = 0.0;
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < r.spec.n_range; ++i) {
      for (std::size_t j = 0; j < r.spec.n_theta; ++j) {
        if (r.at(i, j) > best) {
          best = r.at(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }
    ok = rep.peak_mag == best && rep.peak_row == best_i && rep.peak_col == best_j;
  }
  return {"find_focus returns the global maximum", ok, ok ? "matched linear scan" : "mismatch"};
}

CheckResult rect_range_extent(RandomInputs& in, std::size_t trials) {
  Worst excess;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto env = in.env();
    const double c = env.wave_speed_m_per_s;
    const double width = in.uniform(0.01e-3, 0.5e-3);
    const double delay = in.uniform(2.5 * width, 3e-3 + 2.5 * width);
    const auto pulse = PulseSpec::rect(-delay, width);
    const double half = c * width * in.uniform(0.6, 2.0);
    GridSpec g;
    g.r_min_m = c * delay - half;
    g.r_max_m = c * delay + half;
    g.n_range = std::uniform_int_distribution<std::size_t>(64, 512)(in.rng);
    g.n_theta = 9;
    g.t_s = 0.0;
    const auto cfg = in.array(16, 0.0);
    const auto rep = find_focus(evaluate_raster(cfg, env, pulse, PatternMode::pulsed, g));
    excess.update(std::abs(rep.range_extent_m - c * width) / g.range_step());
  }
  return {"rect pulse range extent equals c*width within one cell", excess.value <= 1.0,
          "worst " + std::to_string(excess.value) + " cells (limit 1)"};
}

}  // namespace

std::vector<CheckResult> run_property_checks(std::uint64_t seed, std::size_t trials) {
  RandomInputs in(seed);
  const std::size_t raster_trials = std::max<std::size_t>(4, trials / 25);
  std::vector<CheckResult> out;
  out.push_back(translation_identity(in, trials));
  out.push_back(zero_offset_invariance(in, trials));
  out.push_back(equivalence_identity(in, trials));
  out.push_back(triangle_bound(in, trials));
  out.push_back(exact_vs_approx_bound(in, trials));
  out.push_back(symmetric_parity(in, trials));
  out.push_back(pulsed_separability(in, trials));
  out.push_back(raster_determinism(in, raster_trials));
  out.push_back(raster_translation(in, raster_trials));
  out.push_back(cw_range_invariance(in, raster_trials));
  out.push_back(focus_is_global_max(in, raster_trials));
  out.push_back(rect_range_extent(in, raster_trials));
  return out;
}

}  // namespace fdasim
