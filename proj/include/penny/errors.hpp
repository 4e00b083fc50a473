#pragma once

#include <stdexcept>
#include <string>

namespace penny {

/// Base of all library errors. The CLI maps each subclass to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad input: invalid parameters, overlapping packings, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

/// Embedding-level inconsistency (bad turning number, failed diagonal test).
class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "geometry"; }
};

/// An iterative method or a retry loop ran out of budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  const char* kind() const noexcept override { return "convergence"; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

}  // namespace penny
