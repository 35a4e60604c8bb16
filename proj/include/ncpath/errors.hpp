#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncpath {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A truncated Fock space is too small for the requested state.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t required_dim)
      : Error(what), required_dim_(required_dim) {}
  std::size_t required_dim() const noexcept { return required_dim_; }

 private:
  std::size_t required_dim_;
};

/// Gaussian composition whose normalizing denominator vanishes.
class DegenerateComposition : public Error {
 public:
  using Error::Error;
};

/// Gaussian integral over a direction without decay.
class NonIntegrable : public Error {
 public:
  using Error::Error;
};

/// A numerical check that did not settle within its ladder or budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncpath
