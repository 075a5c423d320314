#include "fdasim/beampattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdasim {

namespace {

// Shared kernel for af_exact/af_approx. Summation runs n = 0..N-1 in order so
// repeated evaluations are bit-identical.
Complex array_factor(const ArrayConfig& cfg, const PropagationEnv& env, const FieldPoint& p,
                     bool keep_aperture_term) {
  const double c = env.wave_speed_m_per_s;
  const double path_step = cfg.spacing_m() * std::sin(p.theta_rad) / c;  // d sin(theta)/c
  const double tau = p.t_s - p.r_m / c;
  const auto w = cfg.weights();
  const auto phi = cfg.phases_rad();
  const auto df = cfg.freq_offsets_hz();

  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < cfg.size(); ++n) {
    const double advance = static_cast<double>(n) * path_step;
    const double local_time = keep_aperture_term ? tau - advance : tau;
    const double phase =
        kTwoPi * cfg.carrier_hz() * advance + kTwoPi * df[n] * local_time + phi[n];
    sum += std::polar(w[n], phase);
  }
  return sum;
}

}  // namespace

void FieldPoint::validate() const {
  if (!std::isfinite(t_s)) throw std::invalid_argument("observation time must be finite");
  if (!std::isfinite(r_m) || r_m <= 0.0) throw std::invalid_argument("range must be positive");
  if (!(theta_rad >= -kPi / 2.0 && theta_rad <= kPi / 2.0)) {
    throw std::invalid_argument("angle must lie in [-pi/2, pi/2]");
  }
}

Complex af_exact(const ArrayConfig& cfg, const PropagationEnv& env, const FieldPoint& p) {
  return array_factor(cfg, env, p, true);
}

Complex af_approx(const ArrayConfig& cfg, const PropagationEnv& env, const FieldPoint& p) {
  return array_factor(cfg, env, p, false);
}

double propagation_delay(const PropagationEnv& env, double r_m) {
  return r_m / env.wave_speed_m_per_s;
}

Complex received_signal(const ArrayConfig& cfg, const PropagationEnv& env, const PulseSpec& pulse,
                        const FieldPoint& p, bool exact_geometry) {
  p.validate();
  env.validate();
  const double c = env.wave_speed_m_per_s;
  const double offset_step = cfg.spacing_m() * std::sin(p.theta_rad);
  const auto w = cfg.weights();
  const auto phi = cfg.phases_rad();
  const auto df = cfg.freq_offsets_hz();

  auto excitation = [&](std::size_t n, double tau) {
    const double amp = w[n] * env.tx_gain(n) * envelope(pulse, tau);
    return std::polar(amp, kTwoPi * (cfg.carrier_hz() + df[n]) * tau + phi[n]);
  };

  Complex sum{0.0, 0.0};
  if (exact_geometry) {
    for (std::size_t n = 0; n < cfg.size(); ++n) {
      const double rn = p.r_m - static_cast<double>(n) * offset_step;
      if (!(rn > 0.0)) {
        throw std::invalid_argument("element " + std::to_string(n) +
                                    " is at non-positive range from the field point");
      }
      sum += (env.rx_gain / (rn * rn)) * excitation(n, p.t_s - rn / c);
    }
    return sum;
  }

  const double retarded = p.t_s - p.r_m / c;
  for (std::size_t n = 0; n < cfg.size(); ++n) {
    sum += excitation(n, retarded + static_cast<double>(n) * offset_step / c);
  }
  return (env.rx_gain / (p.r_m * p.r_m)) * sum;
}

Complex pulsed_pattern(const ArrayConfig& cfg, const PropagationEnv& env, const PulseSpec& pulse,
                       const FieldPoint& p) {
  if (cfg.has_offsets()) {
    throw std::invalid_argument("pulsed excitation is only defined for phased arrays (zero offsets)");
  }
  const double amp = envelope(pulse, p.t_s - p.r_m / env.wave_speed_m_per_s);
  if (amp == 0.0) return {0.0, 0.0};
  return amp * af_approx(cfg, env, p);
}

std::vector<double> equivalent_phases(const ArrayConfig& cfg, const PropagationEnv& env,
                                      double t_s, double r_m) {
  const double tau = t_s - r_m / env.wave_speed_m_per_s;
  const auto phi = cfg.phases_rad();
  const auto df = cfg.freq_offsets_hz();
  std::vector<double> out(cfg.size());
  for (std::size_t n = 0; n < cfg.size(); ++n) out[n] = phi[n] + kTwoPi * df[n] * tau;
  return out;
}

double to_db(double mag, double peak, double floor_db) {
  if (!(peak > 0.0)) throw std::invalid_argument("dB reference peak must be positive");
  if (!(floor_db < 0.0)) throw std::invalid_argument("dB floor must be negative");
  if (!(mag > 0.0)) return floor_db;
  return std::max(20.0 * std::log10(mag / peak), floor_db);
}

}  // namespace fdasim
