#pragma once

#include <stdexcept>
#include <string>

namespace mpsca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: length mismatch, non-positive parameter, bad config.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A positive field evaluated to a non-positive or non-finite value, or a
/// point left the region where the model is defined.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// Iterative routine gave up: line-search breakdown, projection that does
/// not converge, divergence.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace mpsca
