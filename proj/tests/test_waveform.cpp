#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdasim/waveform.hpp"

using namespace fdasim;
using Catch::Approx;

TEST_CASE("envelope shapes") {
  CHECK(envelope(PulseSpec::cw(), -123.0) == 1.0);
  CHECK(envelope(PulseSpec::cw(), 1e9) == 1.0);

  const auto g = PulseSpec::gaussian(-1e-3, 0.15e-3);
  CHECK(envelope(g, -1e-3) == 1.0);
  const double half = 0.5 * fwhm(g);
  CHECK(envelope(g, -1e-3 + half) == Approx(0.5).margin(1e-12));
  CHECK(envelope(g, -1e-3 - half) == Approx(0.5).margin(1e-12));
  CHECK(fwhm(g) == Approx(0.35e-3).margin(0.005e-3));

  const auto r = PulseSpec::rect(0.0, 0.27e-3);
  CHECK(envelope(r, 0.2e-3) == 0.0);
  CHECK(envelope(r, 0.0) == 1.0);
  // Half-open support [lo, hi).
  CHECK(envelope(PulseSpec::rect(1.0, 2.0), 0.0) == 1.0);
  CHECK(envelope(PulseSpec::rect(1.0, 2.0), 2.0) == 0.0);
}

TEST_CASE("abutting rect pulses tile without overlap") {
  const auto a = PulseSpec::rect(0.5, 1.0);
  const auto b = PulseSpec::rect(1.5, 1.0);
  for (double t : {0.0, 0.25, 0.999999, 1.0, 1.5, 1.999}) {
    CHECK(envelope(a, t) + envelope(b, t) == 1.0);
  }
}

TEST_CASE("fwhm values") {
  CHECK(fwhm(PulseSpec::gaussian(0.0, 0.15e-3)) == Approx(0.35322e-3).epsilon(1e-5));
  CHECK(fwhm(PulseSpec::gaussian(0.0, 0.15e-3)) ==
        Approx(0.00035322300675464237).epsilon(1e-12));
  CHECK(fwhm(PulseSpec::rect(3.0, 0.27e-3)) == 0.27e-3);
  CHECK(fwhm(PulseSpec::gaussian(0.0, 1.0)) == Approx(2.35482).epsilon(1e-6));
  CHECK_THROWS_AS(fwhm(PulseSpec::cw()), std::domain_error);
}

TEST_CASE("Gaussian fwhm agrees with a numeric half-maximum root") {
  // Bisection on envelope(t) - 0.5 over [0, 5 sigma].
  const auto g = PulseSpec::gaussian(0.0, 1.0);
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (envelope(g, mid) > 0.5 ? lo : hi) = mid;
  }
  CHECK(2.0 * lo == Approx(fwhm(g)).epsilon(1e-12));
}

TEST_CASE("envelope stays within [0, 1]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double c = u(rng);
    const double w = std::abs(u(rng)) + 0.01;
    const auto g = PulseSpec::gaussian(c, w);
    const auto r = PulseSpec::rect(c, w);
    for (int m = 0; m < 50; ++m) {
      const double t = u(rng) * 3.0;
      const double eg = envelope(g, t);
      CHECK(eg >= 0.0);
      CHECK(eg <= 1.0);
      // exp() underflows past roughly 38 sigma.
      if (std::abs(t - c) < 30.0 * w) CHECK(eg > 0.0);
      const double er = envelope(r, t);
      CHECK((er == 0.0 || er == 1.0));
    }
  }
}

TEST_CASE("rect envelope integrates to its width") {
  for (double w : {0.27e-3, 0.01, 1.0, 3.7}) {
    const double c = -0.3 * w;
    const auto r = PulseSpec::rect(c, w);
    // Midpoint rule over a window containing the support.
    const int steps = 2'000'000;
    const double a = c - w, b = c + w;
    const double h = (b - a) / steps;
    double area = 0.0;
    for (int i = 0; i < steps; ++i) area += envelope(r, a + (i + 0.5) * h);
    CHECK(area * h == Approx(w).epsilon(1e-6));
  }
}

TEST_CASE("PulseSpec rejects bad durations") {
  CHECK_THROWS_AS(PulseSpec::rect(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec::rect(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec::gaussian(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec::gaussian(std::nan(""), 1.0), std::invalid_argument);
}
