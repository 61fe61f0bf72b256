#pragma once

#include <stdexcept>
#include <string>

namespace gdr {

/// Bad arguments: dimension mismatches, invalid sizes, NaN inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not valid in the current object state (e.g. sampling an empty buffer).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite loss, gradient or parameters.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gdr
