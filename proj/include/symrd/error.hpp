#pragma once

#include <stdexcept>
#include <string>

namespace symrd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model or configuration violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A spec file or command-line value could not be parsed.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An argument lies outside the domain of the evaluated expression
/// (distortion outside (d_min, sigma_x^2), nonpositive log argument, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The input is valid but too close to a boundary to be resolved in
/// double precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an asymptotic or specialised routine is not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Sample statistics are degenerate (e.g. a sample covariance that is not
/// positive definite).
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace symrd
