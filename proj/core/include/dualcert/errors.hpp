#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dualcert {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector or matrix argument has the wrong shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input document is malformed; `field()` names the offending key.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error("parse error at \"" + field + "\": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A structurally well-formed instance violates a model invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error("invalid instance, field \"" + field + "\": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A matrix that must be positive definite is not. Carries the measured
/// smallest eigenvalue so callers can report margins.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string matrix, double lambda_min)
      : Error("matrix " + matrix + " is not positive definite (lambda_min = " +
              std::to_string(lambda_min) + ")"),
        matrix_(std::move(matrix)),
        lambda_min_(lambda_min) {}

  const std::string& matrix() const noexcept { return matrix_; }
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  std::string matrix_;
  double lambda_min_;
};

/// A numerical procedure could not produce a usable result (e.g. the
/// regularization search exhausted its doubling budget).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dualcert
