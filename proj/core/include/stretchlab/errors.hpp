#pragma once

#include <stdexcept>
#include <string>

namespace stretchlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: unknown indices, out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Edge lengths that violate a triangle inequality.
class InvalidMetricError : public Error {
 public:
  using Error::Error;
};

/// Combinatorics that do not have the required shape (non-manifold mesh,
/// collar without product structure, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No region exists with the requested volume.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an exhaustive method.
class SizeError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stretchlab
