#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdasim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Exact speed of light in vacuum [m/s].
inline constexpr double kSpeedOfLight = 299792458.0;
// Rounded value used for back-of-envelope range/time arithmetic [m/s].
inline constexpr double kRoundedSpeedOfLight = 3.0e8;

inline constexpr double kDefaultCarrierHz = 10.0e9;
inline constexpr double kDefaultSidelobeDb = 30.0;

// Linear array geometry and per-element excitation.
//
// Element n (0-based) sits at n * spacing along the array axis and radiates at
// carrier + freq_offset[n]. Element 0 is the reference: position 0, and in a
// linear FDA its offset is 0. Weights are linear amplitudes.
class ArrayConfig {
 public:
  // Throws std::invalid_argument when any invariant is violated.
  ArrayConfig(double spacing_m, double carrier_hz, std::vector<double> weights,
              std::vector<double> phases_rad, std::vector<double> freq_offsets_hz);

  std::size_t size() const noexcept { return weights_.size(); }
  double spacing_m() const noexcept { return spacing_m_; }
  double carrier_hz() const noexcept { return carrier_hz_; }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> phases_rad() const noexcept { return phases_; }
  std::span<const double> freq_offsets_hz() const noexcept { return offsets_; }

  // Sum of weights; upper bound on |AF|.
  double weight_sum() const noexcept;
  double max_abs_offset_hz() const noexcept;
  bool has_offsets() const noexcept { return max_abs_offset_hz() != 0.0; }

  // Same geometry and weights, new phases, all offsets zeroed.
  ArrayConfig as_phased_array(std::vector<double> phases_rad) const;

  bool operator==(const ArrayConfig&) const = default;

 private:
  double spacing_m_;
  double carrier_hz_;
  std::vector<double> weights_;
  std::vector<double> phases_;
  std::vector<double> offsets_;
};

// Wave speed and link gains. The per-element transmit gain list may be empty,
// meaning unit gain on every element.
struct PropagationEnv {
  double wave_speed_m_per_s = kSpeedOfLight;
  double rx_gain = 1.0;
  std::vector<double> tx_gains;

  // Throws std::invalid_argument on non-positive or non-finite values.
  void validate() const;
  double tx_gain(std::size_t n) const;

  bool operator==(const PropagationEnv&) const = default;
};

struct ValidityReport {
  bool farfield_ok = false;
  // r / ((N-1) d); +inf for a single element.
  double farfield_margin = 0.0;
  bool narrowband_ok = false;
  // c / (N d max|df|); +inf when there are no offsets.
  double narrowband_margin = 0.0;
};

double half_wavelength(double carrier_hz, double wave_speed_m_per_s = kSpeedOfLight);

ArrayConfig make_phased_array(std::size_t n, double spacing_m, double carrier_hz,
                              std::vector<double> weights, std::vector<double> phases_rad);

// Offsets n * base_offset_hz for n = 0..N-1.
ArrayConfig make_fda_linear(std::size_t n, double spacing_m, double carrier_hz,
                            double base_offset_hz, std::vector<double> weights,
                            std::vector<double> phases_rad);

// Arbitrary offsets (e.g. from chebyshev_offsets).
ArrayConfig make_fda(std::size_t n, double spacing_m, double carrier_hz,
                     std::vector<double> weights, std::vector<double> phases_rad,
                     std::vector<double> freq_offsets_hz);

/// Dolph-Chebyshev amplitude taper with equiripple sidelobes sidelobe_db below
/// the main lobe (for half-wavelength spacing). Symmetric, peak weight 1.
std::vector<double> chebyshev_taper(std::size_t n, double sidelobe_db);

/// chebyshev_taper min-max rescaled onto [0, max_offset_hz]. A constant taper
/// (n <= 2) maps to all-zero offsets.
std::vector<double> chebyshev_offsets(std::size_t n, double max_offset_hz, double sidelobe_db);

ValidityReport check_validity(const ArrayConfig& cfg, const PropagationEnv& env, double range_m,
                              double farfield_factor, double narrowband_factor);

}  // namespace fdasim
