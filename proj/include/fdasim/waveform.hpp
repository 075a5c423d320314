#pragma once

#include <variant>

namespace fdasim {

struct ContinuousWave {
  bool operator==(const ContinuousWave&) const = default;
};

// Unit-height pulse on [center - width/2, center + width/2).
struct RectPulse {
  double center_s = 0.0;
  double width_s = 1.0;
  bool operator==(const RectPulse&) const = default;
};

// Unit-peak Gaussian envelope, not truncated.
struct GaussianPulse {
  double center_s = 0.0;
  double sigma_s = 1.0;
  bool operator==(const GaussianPulse&) const = default;
};

// Excitation envelope applied to every element.
class PulseSpec {
 public:
  using Shape = std::variant<ContinuousWave, RectPulse, GaussianPulse>;

  PulseSpec() = default;
  // Throws std::invalid_argument on non-positive durations or non-finite times.
  PulseSpec(Shape shape);  // NOLINT(google-explicit-constructor)

  static PulseSpec cw() { return PulseSpec(ContinuousWave{}); }
  static PulseSpec rect(double center_s, double width_s) {
    return PulseSpec(RectPulse{center_s, width_s});
  }
  static PulseSpec gaussian(double center_s, double sigma_s) {
    return PulseSpec(GaussianPulse{center_s, sigma_s});
  }

  const Shape& shape() const noexcept { return shape_; }
  bool is_cw() const noexcept { return std::holds_alternative<ContinuousWave>(shape_); }

  bool operator==(const PulseSpec&) const = default;

 private:
  Shape shape_ = ContinuousWave{};
};

// 2 sqrt(2 ln 2): Gaussian FWHM per unit sigma.
double gaussian_fwhm_factor();

// Envelope amplitude in [0, 1] at time t.
double envelope(const PulseSpec& pulse, double t_s);

// Full width at half maximum. Throws std::domain_error for CW.
double fwhm(const PulseSpec& pulse);

}  // namespace fdasim
