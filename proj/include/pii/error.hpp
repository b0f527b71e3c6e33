#pragma once

#include <stdexcept>
#include <string>

namespace pii {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported evaluation range of a special function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Physical or numerical parameters outside their admissible box.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Caller broke an API precondition (size mismatch, missing data, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Newton iteration (with continuation) failed to reach tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double last_residual, double at_mu)
      : Error(what), last_residual_(last_residual), at_mu_(at_mu) {}

  double last_residual() const noexcept { return last_residual_; }
  double at_mu() const noexcept { return at_mu_; }

private:
  double last_residual_;
  double at_mu_;
};

/// A converged profile is neither Type A, Type B nor identically zero.
class ClassificationError : public Error {
public:
  using Error::Error;
};

/// Neumann boundary determinant of an Airy basis is (numerically) zero.
class DegenerateBasisError : public Error {
public:
  using Error::Error;
};

/// Cube-root argument of the interval-length formula is not positive.
class ConversionError : public Error {
public:
  using Error::Error;
};

} // namespace pii
