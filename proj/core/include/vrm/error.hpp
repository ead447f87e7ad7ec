#pragma once

#include <stdexcept>
#include <string>

namespace vrm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula or profile (e.g. sampled lookup
/// outside the knot range, closed form used outside its validity region).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure did not reach its tolerance. `residual()` carries the
/// best value achieved.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A + lambda(b) Delta^b is (numerically) singular for every lambda(b) tried.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, double last_lambda_b)
      : Error(what), last_lambda_b_(last_lambda_b) {}
  double last_lambda_b() const noexcept { return last_lambda_b_; }

 private:
  double last_lambda_b_;
};

/// Boundary data that cannot define a logarithmic derivative, or two
/// solutions that are not linearly independent.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace vrm
