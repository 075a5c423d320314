#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fdasim/array_config.hpp"
#include "fdasim/beampattern.hpp"

namespace fdasim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Randomized inputs shared by the property suite and the test binaries.
struct RandomInputs {
  explicit RandomInputs(std::uint64_t seed) : rng(seed) {}

  // 1..max_elements elements, arbitrary weights/phases, offsets up to
  // max_offset_hz in magnitude (0 gives a phased array).
  ArrayConfig array(std::size_t max_elements = 24, double max_offset_hz = 20.0e3);
  PropagationEnv env();
  FieldPoint point();
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  std::mt19937_64 rng;
};

// Runs every beampattern and analysis invariant on randomized inputs.
std::vector<CheckResult> run_property_checks(std::uint64_t seed = 0x5eedULL, std::size_t trials = 500);

}  // namespace fdasim
