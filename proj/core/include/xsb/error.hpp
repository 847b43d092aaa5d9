#pragma once

#include <stdexcept>
#include <string>

namespace xsb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid/field shape inconsistent (odd sizes, mismatched sample counts, grids that differ).
class InvalidGrid : public Error {
 public:
  using Error::Error;
};

/// A computation produced or received a non-finite value.
class NumericalDomain : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation (N < 1, t = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace xsb
