#pragma once

#include <stdexcept>
#include <string>

namespace essval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two surds from different quadratic fields were combined.
class IncomparableRepresentations : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A rational number's continued fraction ended before the requested depth.
class RationalExhausted : public Error {
 public:
  using Error::Error;
};

class EndOfTable : public Error {
 public:
  using Error::Error;
};

class PreconditionUnmet : public Error {
 public:
  using Error::Error;
};

/// Raised when an identity that must hold exactly is observed to fail.
/// Any occurrence indicates an arithmetic bug, never a property of the input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ViolationFound : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class LemmaViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class BoundViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class WrapInconsistent : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class VerificationMismatch : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace essval
