#pragma once

#include <stdexcept>
#include <string>

namespace perhom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// An input violates a structural precondition (e.g. d∘d != 0, not a chain map).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A computed result failed the identity it is supposed to satisfy.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace perhom
