#include "fdasim/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>
#include <variant>

#include "fdasim/beampattern.hpp"
#include "fdasim/errors.hpp"

namespace fdasim {

namespace {

class Fnv1a {
 public:
  void add(double x) {
    // -0.0 and 0.0 hash alike.
    add_u64(std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x));
  }
  void add_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xffu;
      hash_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

void check_mode(const ArrayConfig& cfg, const std::optional<PulseSpec>& pulse, PatternMode mode) {
  const bool pulsed_input = pulse.has_value() && !pulse->is_cw();
  switch (mode) {
    case PatternMode::pulsed:
      if (!pulse) throw std::invalid_argument("pulsed mode needs a pulse");
      if (cfg.has_offsets()) {
        throw std::invalid_argument("pulsed mode needs a phased array (zero offsets)");
      }
      return;
    case PatternMode::cw:
      if (cfg.has_offsets()) {
        throw std::invalid_argument("cw mode needs a phased array (zero offsets)");
      }
      [[fallthrough]];
    case PatternMode::fda_exact:
    case PatternMode::fda_approx:
    case PatternMode::equivalent_pa:
      if (pulsed_input) {
        throw std::invalid_argument("mode " + std::string(to_string(mode)) +
                                    " is continuous-wave; pulsed FDA excitation is undefined");
      }
      return;
  }
}

// Walks outward from the peak while the profile stays at or above half, then
// interpolates the crossing. A profile that never drops stops at the edge.
std::pair<double, double> half_max_span(const std::vector<double>& profile,
                                        const std::vector<double>& coords, std::size_t peak) {
  const double half = 0.5 * profile[peak];
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double v_in = profile[inside];
    const double v_out = profile[outside];
    const double frac = (v_in - half) / (v_in - v_out);
    return coords[inside] + frac * (coords[outside] - coords[inside]);
  };

  std::size_t lo = peak;
  while (lo > 0 && profile[lo - 1] >= half) --lo;
  std::size_t hi = peak;
  while (hi + 1 < profile.size() && profile[hi + 1] >= half) ++hi;

  const double lo_pos = lo == 0 ? coords.front() : crossing(lo, lo - 1);
  const double hi_pos = hi + 1 == profile.size() ? coords.back() : crossing(hi, hi + 1);
  return {lo_pos, hi_pos};
}

}  // namespace

std::string_view to_string(PatternMode mode) {
  switch (mode) {
    case PatternMode::cw: return "cw";
    case PatternMode::fda_exact: return "fda_exact";
    case PatternMode::fda_approx: return "fda_approx";
    case PatternMode::pulsed: return "pulsed";
    case PatternMode::equivalent_pa: return "equivalent_pa";
  }
  return "unknown";
}

PatternMode parse_mode(std::string_view name) {
  for (auto mode : {PatternMode::cw, PatternMode::fda_exact, PatternMode::fda_approx,
                    PatternMode::pulsed, PatternMode::equivalent_pa}) {
    if (name == to_string(mode)) return mode;
  }
  throw std::invalid_argument("unknown pattern mode '" + std::string(name) + "'");
}

void GridSpec::validate() const {
  if (!(std::isfinite(r_min_m) && std::isfinite(r_max_m) && r_min_m > 0.0 && r_min_m < r_max_m)) {
    throw std::invalid_argument("grid range bounds must satisfy 0 < r_min < r_max");
  }
  if (!(theta_min_rad >= -kPi / 2.0 && theta_max_rad <= kPi / 2.0 &&
        theta_min_rad < theta_max_rad)) {
    throw std::invalid_argument("grid angle bounds must satisfy -pi/2 <= min < max <= pi/2");
  }
  if (n_range < 2 || n_theta < 2) throw std::invalid_argument("grid needs at least 2x2 samples");
  if (!std::isfinite(t_s)) throw std::invalid_argument("grid snapshot time must be finite");
}

double GridSpec::range_step() const {
  return (r_max_m - r_min_m) / static_cast<double>(n_range - 1);
}

double GridSpec::theta_step() const {
  return (theta_max_rad - theta_min_rad) / static_cast<double>(n_theta - 1);
}

double GridSpec::range_at(std::size_t i) const {
  if (i + 1 == n_range) return r_max_m;
  return r_min_m + static_cast<double>(i) * range_step();
}

double GridSpec::theta_at(std::size_t j) const {
  if (j + 1 == n_theta) return theta_max_rad;
  return theta_min_rad + static_cast<double>(j) * theta_step();
}

double RasterGrid::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::uint64_t fingerprint(const ArrayConfig& cfg, const PropagationEnv& env,
                          const std::optional<PulseSpec>& pulse) {
  Fnv1a h;
  h.add_u64(cfg.size());
  h.add(cfg.spacing_m());
  h.add(cfg.carrier_hz());
  for (double x : cfg.weights()) h.add(x);
  for (double x : cfg.phases_rad()) h.add(x);
  for (double x : cfg.freq_offsets_hz()) h.add(x);
  h.add(env.wave_speed_m_per_s);
  h.add(env.rx_gain);
  h.add_u64(env.tx_gains.size());
  for (double x : env.tx_gains) h.add(x);
  if (!pulse) {
    h.add_u64(0xffu);
  } else {
    const auto& shape = pulse->shape();
    h.add_u64(shape.index());
    if (const auto* r = std::get_if<RectPulse>(&shape)) {
      h.add(r->center_s);
      h.add(r->width_s);
    } else if (const auto* g = std::get_if<GaussianPulse>(&shape)) {
      h.add(g->center_s);
      h.add(g->sigma_s);
    }
  }
  return h.value();
}

RasterGrid evaluate_raster(const ArrayConfig& cfg, const PropagationEnv& env,
                           const std::optional<PulseSpec>& pulse, PatternMode mode,
                           const GridSpec& grid, unsigned workers) {
  grid.validate();
  env.validate();
  check_mode(cfg, pulse, mode);

  RasterGrid raster;
  raster.spec = grid;
  raster.mode = mode;
  raster.fingerprint = fingerprint(cfg, env, pulse);
  raster.values.assign(grid.n_range * grid.n_theta, 0.0);

  std::vector<double> thetas(grid.n_theta);
  for (std::size_t j = 0; j < grid.n_theta; ++j) thetas[j] = grid.theta_at(j);
  const PulseSpec excitation = pulse.value_or(PulseSpec::cw());

  auto fill_row = [&](std::size_t i) {
    const double r = grid.range_at(i);
    double* row = raster.values.data() + i * grid.n_theta;
    if (mode == PatternMode::equivalent_pa) {
      const ArrayConfig pa = cfg.as_phased_array(equivalent_phases(cfg, env, grid.t_s, r));
      for (std::size_t j = 0; j < grid.n_theta; ++j) {
        row[j] = std::abs(af_approx(pa, env, {grid.t_s, r, thetas[j]}));
      }
      return;
    }
    for (std::size_t j = 0; j < grid.n_theta; ++j) {
      const FieldPoint p{grid.t_s, r, thetas[j]};
      switch (mode) {
        case PatternMode::fda_exact: row[j] = std::abs(af_exact(cfg, env, p)); break;
        case PatternMode::pulsed: row[j] = std::abs(pulsed_pattern(cfg, env, excitation, p)); break;
        default: row[j] = std::abs(af_approx(cfg, env, p)); break;
      }
    }
  };

  unsigned n_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, grid.n_range));
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < grid.n_range; ++i) fill_row(i);
    return raster;
  }

  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  const std::size_t chunk = (grid.n_range + n_workers - 1) / n_workers;
  for (unsigned w = 0; w < n_workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(grid.n_range, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fill_row, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fill_row(i);
    });
  }
  for (auto& t : pool) t.join();
  return raster;
}

FocusReport find_focus(const RasterGrid& raster) {
  const GridSpec& g = raster.spec;
  if (raster.values.empty() || raster.values.size() != g.n_range * g.n_theta) {
    throw std::invalid_argument("raster is empty or malformed");
  }

  // First strict maximum in row-major order gives the tie-break for free.
  std::size_t best = 0;
  for (std::size_t k = 1; k < raster.values.size(); ++k) {
    if (raster.values[k] > raster.values[best]) best = k;
  }
  if (!(raster.values[best] > 0.0)) throw NoFocusError("raster has no energy: no focus");

  FocusReport rep;
  rep.peak_row = best / g.n_theta;
  rep.peak_col = best % g.n_theta;
  rep.peak_r_m = g.range_at(rep.peak_row);
  rep.peak_theta_rad = g.theta_at(rep.peak_col);
  rep.peak_mag = raster.values[best];

  std::vector<double> profile(g.n_range), coords(g.n_range);
  for (std::size_t i = 0; i < g.n_range; ++i) {
    profile[i] = raster.at(i, rep.peak_col);
    coords[i] = g.range_at(i);
  }
  const auto [r_lo, r_hi] = half_max_span(profile, coords, rep.peak_row);
  rep.range_extent_m = r_hi - r_lo;
  rep.range_center_m = 0.5 * (r_lo + r_hi);

  profile.resize(g.n_theta);
  coords.resize(g.n_theta);
  for (std::size_t j = 0; j < g.n_theta; ++j) {
    profile[j] = raster.at(rep.peak_row, j);
    coords[j] = g.theta_at(j);
  }
  const auto [a_lo, a_hi] = half_max_span(profile, coords, rep.peak_col);
  rep.theta_extent_rad = a_hi - a_lo;
  return rep;
}

DriftEstimate drift_estimate(const ArrayConfig& cfg, const PropagationEnv& env,
                             const std::optional<PulseSpec>& pulse, PatternMode mode,
                             const GridSpec& grid_template, double t1_s, double t2_s) {
  if (!(std::isfinite(t1_s) && std::isfinite(t2_s)) || t1_s == t2_s) {
    throw std::invalid_argument("drift needs two distinct finite snapshot times");
  }

  auto snapshot = [&](double t) {
    GridSpec g = grid_template;
    g.t_s = t;
    const RasterGrid raster = evaluate_raster(cfg, env, pulse, mode, g);
    const FocusReport rep = find_focus(raster);
    const std::size_t last = g.n_range - 1;
    const std::size_t col = rep.peak_col;
    const bool climbing_low = rep.peak_row == 0 && raster.at(1, col) < raster.at(0, col);
    const bool climbing_high =
        rep.peak_row == last && raster.at(last - 1, col) < raster.at(last, col);
    if (climbing_low || climbing_high) {
      throw PeakEscapedError("peak escaped grid at t = " + std::to_string(t) +
                             " s; widen or shift the range window");
    }
    return rep;
  };

  DriftEstimate est;
  est.first = snapshot(t1_s);
  est.second = snapshot(t2_s);
  const double dt = t2_s - t1_s;
  est.speed_m_per_s = (est.second.peak_r_m - est.first.peak_r_m) / dt;
  est.angle_rate_rad_per_s = (est.second.peak_theta_rad - est.first.peak_theta_rad) / dt;
  return est;
}

std::vector<double> range_cut(const RasterGrid& raster, double theta_rad) {
  const GridSpec& g = raster.spec;
  if (!(theta_rad >= g.theta_min_rad && theta_rad <= g.theta_max_rad)) {
    throw std::invalid_argument("angle lies outside the raster");
  }
  const double pos = (theta_rad - g.theta_min_rad) / g.theta_step();
  const auto col = std::min(g.n_theta - 1, static_cast<std::size_t>(std::lround(pos)));
  std::vector<double> out(g.n_range);
  for (std::size_t i = 0; i < g.n_range; ++i) out[i] = raster.at(i, col);
  return out;
}

}  // namespace fdasim
