#pragma once

#include <stdexcept>
#include <string>

namespace kslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: inadmissible parameters, malformed configuration,
/// violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Corrupted numerical state (NaN/Inf in a field, degenerate quantity that
/// indicates a scheme bug).
class NumericalFault : public Error {
 public:
  using Error::Error;
};

/// File system or serialization failure.
class IoFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace kslab
