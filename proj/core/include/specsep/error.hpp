#pragma once

#include <stdexcept>
#include <string>

namespace specsep {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A domain object violates one of its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-finite input, overflow, or a kernel that could not produce a result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace specsep
