#include "fdasim/run_config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fdasim/errors.hpp"

namespace fdasim {

namespace {

struct KeyInfo {
  std::string_view name;
  bool required;
};

constexpr std::array kKnownKeys = {
    KeyInfo{"array.n", true},           KeyInfo{"array.spacing", false},
    KeyInfo{"array.carrier", false},    KeyInfo{"array.taper", true},
    KeyInfo{"array.offsets", false},    KeyInfo{"pulse.shape", true},
    KeyInfo{"pulse.center", false},     KeyInfo{"pulse.width", false},
    KeyInfo{"pulse.sigma", false},      KeyInfo{"grid.r_min", false},
    KeyInfo{"grid.r_max", false},       KeyInfo{"grid.n_range", false},
    KeyInfo{"grid.theta_min", false},   KeyInfo{"grid.theta_max", false},
    KeyInfo{"grid.n_theta", false},     KeyInfo{"grid.time", false},
    KeyInfo{"env.wave_speed", false},   KeyInfo{"env.rx_gain", false},
    KeyInfo{"env.tx_gain", false},      KeyInfo{"output.stem", false},
    KeyInfo{"output.db_floor", false},  KeyInfo{"output.csv_db", false},
};

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_known(std::string_view key) {
  return std::any_of(kKnownKeys.begin(), kKnownKeys.end(),
                     [&](const KeyInfo& k) { return k.name == key; });
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument("'" + std::string(text) + "' is not a finite number");
  }
  return v;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Suffix {
  std::string_view text;
  int exponent;  // power of ten
};

std::vector<Suffix> suffixes_for(Quantity kind) {
  switch (kind) {
    case Quantity::time: return {{"ns", -9}, {"us", -6}, {"ms", -3}, {"s", 0}};
    case Quantity::length: return {{"mm", -3}, {"cm", -2}, {"km", 3}, {"m", 0}};
    case Quantity::frequency: return {{"kHz", 3}, {"MHz", 6}, {"GHz", 9}, {"Hz", 0}};
    case Quantity::level: return {{"dB", 0}};
    case Quantity::angle: return {{"rad", 0}};
    case Quantity::plain: return {};
  }
  return {};
}

std::size_t parse_count(std::string_view text, std::size_t min) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("'" + std::string(text) + "' is not a non-negative integer");
  }
  if (v < min) throw std::invalid_argument("value must be at least " + std::to_string(min));
  return v;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw std::invalid_argument("'" + std::string(text) + "' is not a boolean");
}

TaperSpec parse_taper(std::string_view text) {
  TaperSpec t;
  if (text == "uniform") return t;
  t.kind = TaperSpec::Kind::chebyshev;
  if (text == "chebyshev") return t;
  if (text.starts_with("chebyshev:")) {
    t.sidelobe_db = parse_quantity(text.substr(10), Quantity::level);
    if (!(t.sidelobe_db > 0.0)) throw std::invalid_argument("sidelobe level must be positive");
    return t;
  }
  throw std::invalid_argument("taper must be uniform, chebyshev or chebyshev:<dB>");
}

OffsetSpec parse_offsets(std::string_view text) {
  OffsetSpec o;
  if (text == "none") return o;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("offsets must be none, linear:<Hz> or chebyshev:<Hz>[:<dB>]");
  }
  const auto kind = text.substr(0, colon);
  auto rest = text.substr(colon + 1);
  if (kind == "linear") {
    o.kind = OffsetSpec::Kind::linear;
    o.value_hz = parse_quantity(rest, Quantity::frequency);
    return o;
  }
  if (kind == "chebyshev") {
    o.kind = OffsetSpec::Kind::chebyshev;
    const auto second = rest.find(':');
    if (second != std::string_view::npos) {
      o.sidelobe_db = parse_quantity(rest.substr(second + 1), Quantity::level);
      rest = rest.substr(0, second);
    }
    o.value_hz = parse_quantity(rest, Quantity::frequency);
    if (!(o.value_hz > 0.0 && o.sidelobe_db > 0.0)) {
      throw std::invalid_argument("chebyshev offsets need positive maximum and sidelobe level");
    }
    return o;
  }
  throw std::invalid_argument("unknown offset profile '" + std::string(kind) + "'");
}

std::string taper_text(const TaperSpec& t) {
  if (t.kind == TaperSpec::Kind::uniform) return "uniform";
  return "chebyshev:" + fmt17(t.sidelobe_db);
}

std::string offsets_text(const OffsetSpec& o) {
  switch (o.kind) {
    case OffsetSpec::Kind::none: return "none";
    case OffsetSpec::Kind::linear: return "linear:" + fmt17(o.value_hz);
    case OffsetSpec::Kind::chebyshev:
      return "chebyshev:" + fmt17(o.value_hz) + ":" + fmt17(o.sidelobe_db);
  }
  return "none";
}

std::map<std::string, Entry> tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header",
                          line_no, "");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no, "");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value", line_no, "");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside of any [section]",
                        line_no, std::string(key));
    }
    const std::string full = section + "." + std::string(key);
    if (!entries.emplace(full, Entry{std::string(value), line_no}).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + full, line_no,
                        full);
    }
  }
  return entries;
}

}  // namespace

double parse_quantity(std::string_view text, Quantity kind) {
  text = trim(text);
  if (kind == Quantity::angle && text.ends_with("deg")) {
    return parse_number(trim(text.substr(0, text.size() - 3))) * kPi / 180.0;
  }
  for (const auto& s : suffixes_for(kind)) {
    if (!text.ends_with(s.text)) continue;
    const auto mantissa = trim(text.substr(0, text.size() - s.text.size()));
    if (s.exponent == 0) return parse_number(mantissa);
    // Fold the scale into the exponent so "0.27ms" parses exactly as 0.27e-3.
    if (mantissa.find_first_of("eE") == std::string_view::npos) {
      parse_number(mantissa);
      return parse_number(std::string(mantissa) + "e" + std::to_string(s.exponent));
    }
    return parse_number(mantissa) * std::pow(10.0, s.exponent);
  }
  return parse_number(text);
}

ArrayConfig RunConfig::build_array() const {
  const double spacing =
      array.spacing_m.value_or(half_wavelength(array.carrier_hz, env.wave_speed_m_per_s));
  std::vector<double> weights = array.taper.kind == TaperSpec::Kind::chebyshev
                                    ? chebyshev_taper(array.n, array.taper.sidelobe_db)
                                    : std::vector<double>(array.n, 1.0);
  std::vector<double> phases(array.n, 0.0);
  switch (array.offsets.kind) {
    case OffsetSpec::Kind::none:
      return make_phased_array(array.n, spacing, array.carrier_hz, std::move(weights),
                               std::move(phases));
    case OffsetSpec::Kind::linear:
      return make_fda_linear(array.n, spacing, array.carrier_hz, array.offsets.value_hz,
                             std::move(weights), std::move(phases));
    case OffsetSpec::Kind::chebyshev:
      return make_fda(array.n, spacing, array.carrier_hz, std::move(weights), std::move(phases),
                      chebyshev_offsets(array.n, array.offsets.value_hz,
                                        array.offsets.sidelobe_db));
  }
  throw std::logic_error("unhandled offset profile");
}

PropagationEnv RunConfig::build_env() const {
  PropagationEnv e;
  e.wave_speed_m_per_s = env.wave_speed_m_per_s;
  e.rx_gain = env.rx_gain;
  if (env.tx_gain != 1.0) e.tx_gains.assign(array.n, env.tx_gain);
  return e;
}

PatternMode RunConfig::default_mode() const {
  if (!pulse.is_cw()) return PatternMode::pulsed;
  if (array.offsets.kind != OffsetSpec::Kind::none) return PatternMode::fda_approx;
  return PatternMode::cw;
}

ParsedConfig parse_config(std::string_view text, std::span<const std::string> overrides) {
  auto entries = tokenize(text);

  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    const auto key = trim(std::string_view(ov).substr(0, eq));
    if (eq == std::string::npos || key.find('.') == std::string_view::npos) {
      throw ConfigError("override '" + ov + "' must look like section.key=value", 0, "");
    }
    const auto value = trim(std::string_view(ov).substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("override '" + ov + "' has an empty value", 0, std::string(key));
    }
    entries[std::string(key)] = Entry{std::string(value), 0};
  }

  for (const auto& [key, entry] : entries) {
    if (!is_known(key)) {
      throw ConfigError("unknown key " + key +
                            (entry.line > 0 ? " (line " + std::to_string(entry.line) + ")" : ""),
                        entry.line, key);
    }
  }

  std::string missing;
  for (const auto& k : kKnownKeys) {
    if (k.required && !entries.contains(std::string(k.name))) {
      missing += (missing.empty() ? "" : ", ") + std::string(k.name);
    }
  }
  if (!missing.empty()) throw ConfigError("missing required keys: " + missing, 0, missing);

  ParsedConfig out;
  RunConfig& cfg = out.config;

  // Runs fn on the entry if present, otherwise records the default.
  auto with = [&](std::string_view key, const std::string& default_text, auto&& fn) {
    const auto it = entries.find(std::string(key));
    if (it == entries.end()) {
      out.provenance.push_back(std::string(key) + " = " + default_text + " (default)");
      return;
    }
    try {
      fn(std::string_view(it->second.value));
    } catch (const std::invalid_argument& e) {
      const int line = it->second.line;
      throw ConfigError(std::string(key) + ": " + e.what() +
                            (line > 0 ? " (line " + std::to_string(line) + ")" : ""),
                        line, std::string(key));
    }
  };
  auto semantic = [](std::string_view key, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(key) + ": " + e.what(), 0, std::string(key));
    }
  };

  with("array.n", "", [&](std::string_view v) { cfg.array.n = parse_count(v, 1); });
  with("array.carrier", fmt17(kDefaultCarrierHz), [&](std::string_view v) {
    cfg.array.carrier_hz = parse_quantity(v, Quantity::frequency);
  });
  with("array.spacing", "half-wavelength", [&](std::string_view v) {
    if (v == "half-wavelength") {
      cfg.array.spacing_m.reset();
    } else {
      cfg.array.spacing_m = parse_quantity(v, Quantity::length);
    }
  });
  with("array.taper", "", [&](std::string_view v) { cfg.array.taper = parse_taper(v); });
  if (cfg.array.taper.kind == TaperSpec::Kind::chebyshev &&
      entries.at("array.taper").value == "chebyshev") {
    out.provenance.push_back("array.taper sidelobe = " + fmt17(kDefaultSidelobeDb) +
                             " dB (default)");
  }
  with("array.offsets", "none", [&](std::string_view v) { cfg.array.offsets = parse_offsets(v); });

  std::string shape;
  with("pulse.shape", "", [&](std::string_view v) {
    if (v != "cw" && v != "rect" && v != "gaussian") {
      throw std::invalid_argument("shape must be cw, rect or gaussian");
    }
    shape = std::string(v);
  });
  double center = 0.0, width = 0.0, sigma = 0.0;
  auto reject_unused = [&](std::string_view key) {
    if (entries.contains(std::string(key))) {
      throw ConfigError(std::string(key) + " is not used by pulse shape " + shape,
                        entries.at(std::string(key)).line, std::string(key));
    }
  };
  auto require_key = [&](std::string_view key) {
    if (!entries.contains(std::string(key))) {
      throw ConfigError(std::string(key) + " is required for pulse shape " + shape, 0,
                        std::string(key));
    }
  };
  if (shape == "cw") {
    reject_unused("pulse.center");
    reject_unused("pulse.width");
    reject_unused("pulse.sigma");
  } else {
    require_key(shape == "rect" ? "pulse.width" : "pulse.sigma");
    reject_unused(shape == "rect" ? "pulse.sigma" : "pulse.width");
    with("pulse.center", "0", [&](std::string_view v) { center = parse_quantity(v, Quantity::time); });
    const bool rect = shape == "rect";
    with(rect ? "pulse.width" : "pulse.sigma", "", [&](std::string_view v) {
      (rect ? width : sigma) = parse_quantity(v, Quantity::time);
    });
  }
  semantic("pulse", [&] {
    if (shape == "rect") cfg.pulse = PulseSpec::rect(center, width);
    if (shape == "gaussian") cfg.pulse = PulseSpec::gaussian(center, sigma);
  });

  GridSpec& g = cfg.grid;
  with("grid.r_min", fmt17(g.r_min_m), [&](std::string_view v) {
    g.r_min_m = parse_quantity(v, Quantity::length);
  });
  with("grid.r_max", fmt17(g.r_max_m), [&](std::string_view v) {
    g.r_max_m = parse_quantity(v, Quantity::length);
  });
  with("grid.n_range", std::to_string(g.n_range), [&](std::string_view v) {
    g.n_range = parse_count(v, 2);
  });
  with("grid.theta_min", fmt17(g.theta_min_rad), [&](std::string_view v) {
    g.theta_min_rad = parse_quantity(v, Quantity::angle);
  });
  with("grid.theta_max", fmt17(g.theta_max_rad), [&](std::string_view v) {
    g.theta_max_rad = parse_quantity(v, Quantity::angle);
  });
  with("grid.n_theta", std::to_string(g.n_theta), [&](std::string_view v) {
    g.n_theta = parse_count(v, 2);
  });
  with("grid.time", "0", [&](std::string_view v) { g.t_s = parse_quantity(v, Quantity::time); });

  with("env.wave_speed", fmt17(kSpeedOfLight), [&](std::string_view v) {
    cfg.env.wave_speed_m_per_s = parse_number(v);
  });
  with("env.rx_gain", "1", [&](std::string_view v) { cfg.env.rx_gain = parse_number(v); });
  with("env.tx_gain", "1", [&](std::string_view v) { cfg.env.tx_gain = parse_number(v); });

  with("output.stem", cfg.output.stem, [&](std::string_view v) {
    if (v.find_first_of("/\\") != std::string_view::npos) {
      throw std::invalid_argument("stem must be a plain file name");
    }
    cfg.output.stem = std::string(v);
  });
  with("output.db_floor", fmt17(cfg.output.db_floor), [&](std::string_view v) {
    cfg.output.db_floor = parse_quantity(v, Quantity::level);
    if (!(cfg.output.db_floor < 0.0)) throw std::invalid_argument("dB floor must be negative");
  });
  with("output.csv_db", "false", [&](std::string_view v) { cfg.output.csv_db = parse_bool(v); });

  semantic("grid", [&] { g.validate(); });
  semantic("env", [&] { cfg.build_env().validate(); });
  semantic("array", [&] { cfg.build_array(); });
  if (cfg.array.offsets.kind != OffsetSpec::Kind::none && !cfg.pulse.is_cw()) {
    throw ConfigError("array.offsets: pulsed excitation of a frequency diverse array is undefined",
                      entries.at("array.offsets").line, "array.offsets");
  }
  return out;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[array]\n";
  os << "n = " << c.array.n << "\n";
  os << "spacing = " << (c.array.spacing_m ? fmt17(*c.array.spacing_m) : "half-wavelength")
     << "\n";
  os << "carrier = " << fmt17(c.array.carrier_hz) << "\n";
  os << "taper = " << taper_text(c.array.taper) << "\n";
  os << "offsets = " << offsets_text(c.array.offsets) << "\n";

  os << "\n[pulse]\n";
  const auto& shape = c.pulse.shape();
  if (const auto* r = std::get_if<RectPulse>(&shape)) {
    os << "shape = rect\ncenter = " << fmt17(r->center_s) << "\nwidth = " << fmt17(r->width_s)
       << "\n";
  } else if (const auto* gp = std::get_if<GaussianPulse>(&shape)) {
    os << "shape = gaussian\ncenter = " << fmt17(gp->center_s)
       << "\nsigma = " << fmt17(gp->sigma_s) << "\n";
  } else {
    os << "shape = cw\n";
  }

  const GridSpec& g = c.grid;
  os << "\n[grid]\n";
  os << "r_min = " << fmt17(g.r_min_m) << "\n";
  os << "r_max = " << fmt17(g.r_max_m) << "\n";
  os << "n_range = " << g.n_range << "\n";
  os << "theta_min = " << fmt17(g.theta_min_rad) << "\n";
  os << "theta_max = " << fmt17(g.theta_max_rad) << "\n";
  os << "n_theta = " << g.n_theta << "\n";
  os << "time = " << fmt17(g.t_s) << "\n";

  os << "\n[env]\n";
  os << "wave_speed = " << fmt17(c.env.wave_speed_m_per_s) << "\n";
  os << "rx_gain = " << fmt17(c.env.rx_gain) << "\n";
  os << "tx_gain = " << fmt17(c.env.tx_gain) << "\n";

  os << "\n[output]\n";
  os << "stem = " << c.output.stem << "\n";
  os << "db_floor = " << fmt17(c.output.db_floor) << "\n";
  os << "csv_db = " << (c.output.csv_db ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace fdasim
