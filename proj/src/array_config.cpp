#include "fdasim/array_config.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdasim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Chebyshev polynomial of the first kind, valid on the whole real line.
double chebyshev_poly(int order, double x) {
  if (std::abs(x) <= 1.0) return std::cos(order * std::acos(x));
  if (x > 1.0) return std::cosh(order * std::acosh(x));
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  return sign * std::cosh(order * std::acosh(-x));
}

}  // namespace

ArrayConfig::ArrayConfig(double spacing_m, double carrier_hz, std::vector<double> weights,
                         std::vector<double> phases_rad, std::vector<double> freq_offsets_hz)
    : spacing_m_(spacing_m),
      carrier_hz_(carrier_hz),
      weights_(std::move(weights)),
      phases_(std::move(phases_rad)),
      offsets_(std::move(freq_offsets_hz)) {
  require(!weights_.empty(), "array needs at least one element");
  require(std::isfinite(spacing_m_) && spacing_m_ > 0.0, "element spacing must be positive");
  require(std::isfinite(carrier_hz_) && carrier_hz_ > 0.0, "carrier frequency must be positive");
  require(phases_.size() == weights_.size(),
          "phase list has " + std::to_string(phases_.size()) + " entries, expected " +
              std::to_string(weights_.size()));
  require(offsets_.size() == weights_.size(),
          "offset list has " + std::to_string(offsets_.size()) + " entries, expected " +
              std::to_string(weights_.size()));
  require(all_finite(weights_) &&
              std::all_of(weights_.begin(), weights_.end(), [](double w) { return w >= 0.0; }),
          "weights must be finite and non-negative");
  require(all_finite(phases_), "phases must be finite");
  require(all_finite(offsets_), "frequency offsets must be finite");
}

double ArrayConfig::weight_sum() const noexcept {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

double ArrayConfig::max_abs_offset_hz() const noexcept {
  double m = 0.0;
  for (double f : offsets_) m = std::max(m, std::abs(f));
  return m;
}

ArrayConfig ArrayConfig::as_phased_array(std::vector<double> phases_rad) const {
  return ArrayConfig(spacing_m_, carrier_hz_, weights_, std::move(phases_rad),
                     std::vector<double>(size(), 0.0));
}

void PropagationEnv::validate() const {
  require(std::isfinite(wave_speed_m_per_s) && wave_speed_m_per_s > 0.0,
          "wave speed must be positive");
  require(std::isfinite(rx_gain) && rx_gain > 0.0, "receive gain must be positive");
  for (double g : tx_gains) require(std::isfinite(g) && g > 0.0, "transmit gains must be positive");
}

double PropagationEnv::tx_gain(std::size_t n) const {
  if (tx_gains.empty()) return 1.0;
  if (n >= tx_gains.size()) {
    throw std::invalid_argument("no transmit gain for element " + std::to_string(n));
  }
  return tx_gains[n];
}

double half_wavelength(double carrier_hz, double wave_speed_m_per_s) {
  require(carrier_hz > 0.0 && wave_speed_m_per_s > 0.0,
          "half wavelength needs positive carrier and wave speed");
  return 0.5 * wave_speed_m_per_s / carrier_hz;
}

ArrayConfig make_phased_array(std::size_t n, double spacing_m, double carrier_hz,
                              std::vector<double> weights, std::vector<double> phases_rad) {
  return make_fda(n, spacing_m, carrier_hz, std::move(weights), std::move(phases_rad),
                  std::vector<double>(n, 0.0));
}

ArrayConfig make_fda_linear(std::size_t n, double spacing_m, double carrier_hz,
                            double base_offset_hz, std::vector<double> weights,
                            std::vector<double> phases_rad) {
  require(std::isfinite(base_offset_hz), "base frequency offset must be finite");
  std::vector<double> offsets(n);
  for (std::size_t i = 0; i < n; ++i) offsets[i] = static_cast<double>(i) * base_offset_hz;
  return make_fda(n, spacing_m, carrier_hz, std::move(weights), std::move(phases_rad),
                  std::move(offsets));
}

ArrayConfig make_fda(std::size_t n, double spacing_m, double carrier_hz,
                     std::vector<double> weights, std::vector<double> phases_rad,
                     std::vector<double> freq_offsets_hz) {
  require(n >= 1, "array needs at least one element");
  require(weights.size() == n, "weight list has " + std::to_string(weights.size()) +
                                   " entries, expected " + std::to_string(n));
  return ArrayConfig(spacing_m, carrier_hz, std::move(weights), std::move(phases_rad),
                     std::move(freq_offsets_hz));
}

std::vector<double> chebyshev_taper(std::size_t n, double sidelobe_db) {
  require(n >= 1, "taper needs at least one element");
  require(std::isfinite(sidelobe_db) && sidelobe_db > 0.0, "sidelobe level must be positive");
  if (n <= 2) return std::vector<double>(n, 1.0);

  // Symmetric weights give AF(psi) = exp(j(N-1)psi/2) * T_{N-1}(x0 cos(psi/2))
  // up to scale. Sampling at psi_k = 2 pi k / N and inverting the length-N DFT
  // recovers the weights exactly.
  const int order = static_cast<int>(n) - 1;
  const double ratio = std::pow(10.0, sidelobe_db / 20.0);
  const double x0 = std::cosh(std::acosh(ratio) / order);
  const double count = static_cast<double>(n);

  std::vector<std::complex<double>> samples(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double half_psi = kPi * static_cast<double>(k) / count;
    samples[k] = std::polar(chebyshev_poly(order, x0 * std::cos(half_psi)), half_psi * order);
  }

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const auto idx = static_cast<double>((i * k) % n);
      acc += samples[k] * std::polar(1.0, -kTwoPi * idx / count);
    }
    w[i] = acc.real() / count;
  }

  for (std::size_t i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (w[i] + w[n - 1 - i]);
    w[i] = avg;
    w[n - 1 - i] = avg;
  }
  const double peak = *std::max_element(w.begin(), w.end());
  for (double& x : w) x = std::max(0.0, x / peak);
  return w;
}

std::vector<double> chebyshev_offsets(std::size_t n, double max_offset_hz, double sidelobe_db) {
  require(std::isfinite(max_offset_hz) && max_offset_hz > 0.0,
          "maximum frequency offset must be positive");
  std::vector<double> taper = chebyshev_taper(n, sidelobe_db);
  const auto [lo_it, hi_it] = std::minmax_element(taper.begin(), taper.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  if (span <= 1e-12 * std::abs(*hi_it)) return std::vector<double>(n, 0.0);
  for (double& x : taper) x = std::clamp((x - lo) / span, 0.0, 1.0) * max_offset_hz;
  return taper;
}

ValidityReport check_validity(const ArrayConfig& cfg, const PropagationEnv& env, double range_m,
                              double farfield_factor, double narrowband_factor) {
  require(std::isfinite(range_m) && range_m > 0.0, "range must be positive");
  require(farfield_factor > 1.0 && narrowband_factor > 1.0, "validity factors must exceed 1");
  env.validate();

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(cfg.size());
  const double aperture = (n - 1.0) * cfg.spacing_m();
  const double spread = n * cfg.spacing_m() * cfg.max_abs_offset_hz();

  ValidityReport report;
  report.farfield_ok = range_m >= farfield_factor * aperture;
  report.farfield_margin = aperture > 0.0 ? range_m / aperture : inf;
  report.narrowband_ok = env.wave_speed_m_per_s >= narrowband_factor * spread;
  report.narrowband_margin = spread > 0.0 ? env.wave_speed_m_per_s / spread : inf;
  return report;
}

}  // namespace fdasim
