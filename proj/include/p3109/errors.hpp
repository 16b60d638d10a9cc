#pragma once

#include <stdexcept>
#include <string>

namespace p3109 {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A format parameter violates one of the structural constraints.
class ConstraintViolation : public Error {
public:
  using Error::Error;
};

/// An encoding lies outside [0, 2^K).
class OutOfRange : public Error {
public:
  using Error::Error;
};

/// A Value does not satisfy the validity predicate of its format.
class InvalidValue : public Error {
public:
  using Error::Error;
};

/// An extended real is not representable in the target format.
class NotInValueSet : public Error {
public:
  using Error::Error;
};

/// Exhaustive enumeration requested for a format wider than the guard.
class FormatTooLarge : public Error {
public:
  using Error::Error;
};

/// Zero passed where a nonzero number is required.
class ZeroInput : public Error {
public:
  using Error::Error;
};

/// An algorithm precondition does not hold (wrong signedness, non-finite
/// operand, sigma not a power of two, ...).
class PreconditionViolation : public Error {
public:
  using Error::Error;
};

/// Malformed textual input (format strings, numbers, mode names).
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace p3109
