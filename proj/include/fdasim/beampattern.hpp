#pragma once

#include <complex>
#include <vector>

#include "fdasim/array_config.hpp"
#include "fdasim/waveform.hpp"

namespace fdasim {

using Complex = std::complex<double>;

// Observation point: time t, range r from the reference element, angle theta
// off broadside in [-pi/2, pi/2].
struct FieldPoint {
  double t_s = 0.0;
  double r_m = 1.0;
  double theta_rad = 0.0;

  // Throws std::invalid_argument when r <= 0 or theta is out of bounds.
  void validate() const;
};

// Array factors. Both drop the common kr/r^2 amplitude and the shared
// exp(j 2 pi f0 (t - r/c)) carrier, and use 0-based element indices:
//
//   exact:  sum_n w_n exp(j[2 pi f0 n d sin(theta)/c
//                          + 2 pi df_n (t - r/c - n d sin(theta)/c) + phi_n])
//   approx: the same without the n d sin(theta)/c term multiplying df_n.
//
// The geometric term carries +n d sin(theta), while received_signal() delays
// element n by (r - n d sin(theta))/c. The two conventions differ by a global
// conjugation of the angular term only; |AF| is unaffected.
Complex af_exact(const ArrayConfig& cfg, const PropagationEnv& env, const FieldPoint& p);
Complex af_approx(const ArrayConfig& cfg, const PropagationEnv& env, const FieldPoint& p);

// Full superposition at the field point, keeping amplitude decay and carrier.
// exact_geometry: per-element ranges r_n = r - n d sin(theta), each with its own
// 1/r_n^2 and delay r_n/c. Otherwise the far-field form with common 1/r^2 and
// per-element advance n d sin(theta)/c. Element n radiates
// w_n * kt_n * envelope(tau) * exp(j(2 pi (f0 + df_n) tau + phi_n)).
Complex received_signal(const ArrayConfig& cfg, const PropagationEnv& env, const PulseSpec& pulse,
                        const FieldPoint& p, bool exact_geometry);

// One-way propagation delay r/c.
double propagation_delay(const PropagationEnv& env, double r_m);

// envelope(t - r/c) * af_approx. Rejects configs with frequency offsets.
Complex pulsed_pattern(const ArrayConfig& cfg, const PropagationEnv& env, const PulseSpec& pulse,
                       const FieldPoint& p);

// Phases phi_n + 2 pi df_n (t - r/c): a phased array with these phases and no
// offsets has the same af_approx as cfg at this (t, r), for every angle.
std::vector<double> equivalent_phases(const ArrayConfig& cfg, const PropagationEnv& env,
                                      double t_s, double r_m);

// max(20 log10(mag/peak), floor_db). Throws on peak <= 0 or floor_db >= 0.
double to_db(double mag, double peak, double floor_db);

}  // namespace fdasim
