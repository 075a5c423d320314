#pragma once

#include <stdexcept>
#include <string>

namespace fdasim {

// Raised by find_focus on a raster with no energy.
class NoFocusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by drift_estimate when a snapshot peak sits against the range edge
// of the grid and is still climbing, i.e. the true peak lies outside.
class PeakEscapedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the config parser. line() is 0 for semantic errors that are not
// tied to one line; key() is empty for pure syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, std::string key)
      : std::runtime_error(what), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_ = 0;
  std::string key_;
};

}  // namespace fdasim
