#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdasim/analysis.hpp"
#include "fdasim/array_config.hpp"
#include "fdasim/waveform.hpp"

namespace fdasim {

struct TaperSpec {
  enum class Kind { uniform, chebyshev };
  Kind kind = Kind::uniform;
  double sidelobe_db = kDefaultSidelobeDb;
  bool operator==(const TaperSpec&) const = default;
};

struct OffsetSpec {
  enum class Kind { none, linear, chebyshev };
  Kind kind = Kind::none;
  // linear: step between neighbours; chebyshev: largest offset.
  double value_hz = 0.0;
  double sidelobe_db = kDefaultSidelobeDb;
  bool operator==(const OffsetSpec&) const = default;
};

struct RunConfig {
  struct Array {
    std::size_t n = 1;
    std::optional<double> spacing_m;  // empty: half wavelength at the carrier
    double carrier_hz = kDefaultCarrierHz;
    TaperSpec taper;
    OffsetSpec offsets;
    bool operator==(const Array&) const = default;
  };
  struct Env {
    double wave_speed_m_per_s = kSpeedOfLight;
    double rx_gain = 1.0;
    double tx_gain = 1.0;
    bool operator==(const Env&) const = default;
  };
  struct Output {
    std::string stem = "pattern";
    double db_floor = -60.0;
    bool csv_db = false;
    bool operator==(const Output&) const = default;
  };

  Array array;
  PulseSpec pulse;
  GridSpec grid;
  Env env;
  Output output;

  ArrayConfig build_array() const;
  PropagationEnv build_env() const;
  // Default mode for the config: pulsed, fda_approx, or cw.
  PatternMode default_mode() const;

  bool operator==(const RunConfig&) const = default;
};

struct ParsedConfig {
  RunConfig config;
  // One line per default that was applied, e.g. "grid.n_range = 512 (default)".
  std::vector<std::string> provenance;
};

// Parses the `[section]` / `key = value` format. Overrides take the form
// "section.key=value" and replace file entries. Throws ConfigError.
ParsedConfig parse_config(std::string_view text, std::span<const std::string> overrides = {});

// Canonical text in SI base units; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// Number with an optional unit suffix, e.g. "0.27ms", "150km", "5kHz", "-90deg".
enum class Quantity { plain, time, length, frequency, angle, level };
double parse_quantity(std::string_view text, Quantity kind);

}  // namespace fdasim
