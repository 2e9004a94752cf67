#pragma once

#include <stdexcept>
#include <string>

namespace nlsfilt {

// Invalid configuration or input: bad grid, mismatched sizes, malformed plans.
// The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical abort: NaN/Inf or blow-up detected while stepping. CLI exit code 3.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlsfilt
