#include "fdasim/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdasim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_duration(double center, double duration, const char* name) {
  if (!std::isfinite(center)) throw std::invalid_argument("pulse center must be finite");
  if (!std::isfinite(duration) || duration <= 0.0) {
    throw std::invalid_argument(std::string("pulse ") + name + " must be positive");
  }
}

}  // namespace

PulseSpec::PulseSpec(Shape shape) : shape_(shape) {
  std::visit(overloaded{
                 [](const ContinuousWave&) {},
                 [](const RectPulse& p) { check_duration(p.center_s, p.width_s, "width"); },
                 [](const GaussianPulse& p) { check_duration(p.center_s, p.sigma_s, "sigma"); },
             },
             shape_);
}

double gaussian_fwhm_factor() {
  static const double factor = 2.0 * std::sqrt(2.0 * std::log(2.0));
  return factor;
}

double envelope(const PulseSpec& pulse, double t_s) {
  return std::visit(overloaded{
                        [](const ContinuousWave&) { return 1.0; },
                        [t_s](const RectPulse& p) {
                          const double lo = p.center_s - 0.5 * p.width_s;
                          const double hi = p.center_s + 0.5 * p.width_s;
                          return (t_s >= lo && t_s < hi) ? 1.0 : 0.0;
                        },
                        [t_s](const GaussianPulse& p) {
                          const double u = (t_s - p.center_s) / p.sigma_s;
                          return std::exp(-0.5 * u * u);
                        },
                    },
                    pulse.shape());
}

double fwhm(const PulseSpec& pulse) {
  return std::visit(overloaded{
                        [](const ContinuousWave&) -> double {
                          throw std::domain_error("continuous wave has unbounded support");
                        },
                        [](const RectPulse& p) { return p.width_s; },
                        [](const GaussianPulse& p) { return gaussian_fwhm_factor() * p.sigma_s; },
                    },
                    pulse.shape());
}

}  // namespace fdasim
