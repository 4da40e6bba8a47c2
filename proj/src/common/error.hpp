#pragma once

#include <stdexcept>
#include <string>

namespace vvv {

// Each error class maps onto one C API status code and one CLI exit code.

/// Invalid configuration, plan or argument (CLI exit 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two fields or a field and a file refer to different grids.
class GridMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field violates a structural invariant (e.g. conjugate symmetry,
/// solenoidality where it is required).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time integration produced non-finite or runaway values (CLI exit 2).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step, double time)
      : std::runtime_error(what), step_(step), time_(time) {}
  long step() const { return step_; }
  double time() const { return time_; }

 private:
  long step_;
  double time_;
};

/// Malformed snapshot (magic, version, truncated payload).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vvv
