#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdasim/array_config.hpp"
#include "fdasim/waveform.hpp"

namespace fdasim {

// What a raster cell holds.
//   cw             |af| of a phased array (offsets must be zero)
//   fda_exact      |af_exact|
//   fda_approx     |af_approx|
//   pulsed         |pulsed_pattern| (needs a pulse and zero offsets)
//   equivalent_pa  |af_approx| of the phased array from equivalent_phases()
//                  recomputed for every range sample
enum class PatternMode { cw, fda_exact, fda_approx, pulsed, equivalent_pa };

std::string_view to_string(PatternMode mode);
// Throws std::invalid_argument on unknown names.
PatternMode parse_mode(std::string_view name);

// Uniform inclusive sampling of range and angle at one snapshot time.
struct GridSpec {
  double r_min_m = 1.0e3;
  double r_max_m = 400.0e3;
  std::size_t n_range = 512;
  double theta_min_rad = -kPi / 2.0;
  double theta_max_rad = kPi / 2.0;
  std::size_t n_theta = 512;
  double t_s = 0.0;

  void validate() const;
  double range_at(std::size_t i) const;
  double theta_at(std::size_t j) const;
  double range_step() const;
  double theta_step() const;

  bool operator==(const GridSpec&) const = default;
};

struct RasterGrid {
  GridSpec spec;
  PatternMode mode = PatternMode::cw;
  // Row-major, range outer: values[i * n_theta + j] at (range_at(i), theta_at(j)).
  std::vector<double> values;
  std::uint64_t fingerprint = 0;

  double at(std::size_t i, std::size_t j) const { return values[i * spec.n_theta + j]; }
  double peak() const;
};

struct FocusReport {
  std::size_t peak_row = 0;
  std::size_t peak_col = 0;
  double peak_r_m = 0.0;
  double peak_theta_rad = 0.0;
  double peak_mag = 0.0;
  // Half-maximum extents along the peak-angle and peak-range cuts.
  double range_extent_m = 0.0;
  double theta_extent_rad = 0.0;
  // Midpoint of the two half-maximum crossings along range.
  double range_center_m = 0.0;
};

struct DriftEstimate {
  double speed_m_per_s = 0.0;
  double angle_rate_rad_per_s = 0.0;
  FocusReport first;
  FocusReport second;
};

// FNV-1a digest over the canonical bytes of config, pulse and environment.
std::uint64_t fingerprint(const ArrayConfig& cfg, const PropagationEnv& env,
                          const std::optional<PulseSpec>& pulse);

// |pattern| on the grid. workers == 0 picks the hardware concurrency; results
// do not depend on the worker count.
RasterGrid evaluate_raster(const ArrayConfig& cfg, const PropagationEnv& env,
                           const std::optional<PulseSpec>& pulse, PatternMode mode,
                           const GridSpec& grid, unsigned workers = 0);

// Global maximum (ties: lowest range row, then lowest angle column) with
// linearly interpolated half-maximum extents. Throws NoFocusError when the
// raster is all zero.
FocusReport find_focus(const RasterGrid& raster);

// Peak-range speed between snapshots at t1 and t2 on the same grid window.
// Throws PeakEscapedError when either peak is pinned against a range edge.
DriftEstimate drift_estimate(const ArrayConfig& cfg, const PropagationEnv& env,
                             const std::optional<PulseSpec>& pulse, PatternMode mode,
                             const GridSpec& grid_template, double t1_s, double t2_s);

// Magnitude versus range along the angle column nearest to theta.
std::vector<double> range_cut(const RasterGrid& raster, double theta_rad);

}  // namespace fdasim
