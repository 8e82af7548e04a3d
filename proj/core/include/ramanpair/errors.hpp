#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ramanpair {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (bad quantum numbers,
/// manifold mismatch, non-unit vectors, unsupported state shapes).
class InputDomainError : public Error {
 public:
  using Error::Error;
};

/// A document (atom spec, serialized state, run config) violates its schema.
/// key() names the offending key path, e.g. "pump.polarisation".
class SchemaError : public InputDomainError {
 public:
  SchemaError(std::string key, const std::string& message)
      : InputDomainError(key.empty() ? message : "'" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A detuning that the adiabatic-elimination formula divides by is zero.
class SingularDetuningError : public Error {
 public:
  using Error::Error;
};

/// No amplitude survives (no allowed scattering, empty filter channel).
class EmptyStateError : public Error {
 public:
  using Error::Error;
};

/// The far off-resonant condition |Delta(F')| / Gamma > threshold fails.
class OffResonanceError : public Error {
 public:
  using Error::Error;
};

/// Iteration failed to converge or produced a non-finite result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramanpair
