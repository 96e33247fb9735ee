#pragma once

#include <stdexcept>
#include <string>

namespace molqa {

// Bad run configuration or invalid argument values. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adiabatic state tracking lost a state (max overlap <= 0.5) or labels are
// undefined (e.g. zero magnetic field). CLI exit code 3.
struct TrackingError : std::runtime_error {
  explicit TrackingError(const std::string& msg, double e_kv_cm = 0.0)
      : std::runtime_error(msg), e_kv_cm(e_kv_cm) {}
  double e_kv_cm;
};

// Numerical failure: norm drift, missing bracket minimum, unreached ratio.
// CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size exceeds a configured ceiling. CLI exit code 4.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace molqa
