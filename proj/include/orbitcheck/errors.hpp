#pragma once

#include <stdexcept>
#include <string>

namespace orbitcheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, tensors, parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant (Jacobi, homomorphism, reductivity, ...) failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Catalog entry or registry chain needs an algebra this library cannot build.
class Unconstructible : public Error {
 public:
  using Error::Error;
};

/// A randomized numerical procedure failed to certify its result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitcheck
