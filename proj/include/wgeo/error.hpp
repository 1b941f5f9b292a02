#ifndef WGEO_ERROR_HPP
#define WGEO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wgeo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied malformed or out-of-contract input (bad dimension, bad
/// parameter, mismatched sizes, failed space validation).
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public InputError {
 public:
  using InputError::InputError;
};

class InvalidParameter : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// The numerical radius of the operator vanishes, so attainment sets and
/// orthogonality are undefined for it.
class DegenerateOperator : public InputError {
 public:
  using InputError::InputError;
};

/// The numerical radius is only a seminorm on the given space.
class NormFailure : public InputError {
 public:
  using InputError::InputError;
};

class Unsupported : public InputError {
 public:
  using InputError::InputError;
};

/// Two computations that must agree did not (e.g. a primal/dual gap above
/// tolerance). Signals a bug or a numerically hopeless instance.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace wgeo

#endif  // WGEO_ERROR_HPP
