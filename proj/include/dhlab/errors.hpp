#pragma once

#include <stdexcept>
#include <string>

namespace dhlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |φ| = 1 or ψ ⊥ φ violated beyond the accepted tolerance.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NonZeroMean : public Error {
 public:
  using Error::Error;
};

/// A current whose divergence exceeds the tolerance was handed to a
/// potential reconstruction.
class NotConserved : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class Diverged : public Error {
 public:
  using Error::Error;
};

class MajoranaViolated : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// Verification suite name not recognised.
class UnknownSuite : public Error {
 public:
  using Error::Error;
};

}  // namespace dhlab
