#pragma once

#include <stdexcept>
#include <string>

namespace jbstar {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Elements of different algebras were combined.
class DescriptorMismatch : public Error {
public:
  explicit DescriptorMismatch(const std::string& what) : Error(what) {}
};

/// A descriptor string failed to parse.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// An operation requiring a self-adjoint input received a general one.
class NotSelfAdjoint : public Error {
public:
  explicit NotSelfAdjoint(const std::string& what) : Error(what) {}
};

/// An operation requiring a projection received a non-projection.
class NotProjection : public Error {
public:
  explicit NotProjection(const std::string& what) : Error(what) {}
};

/// An operation requiring a positive element received a non-positive one.
class NotPositive : public Error {
public:
  explicit NotPositive(const std::string& what) : Error(what) {}
};

/// A precondition on an operation argument was violated.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A constructed map or representation failed its residual verification.
/// Carries the worst offending residual for diagnosis.
class VerificationFailure : public Error {
public:
  VerificationFailure(const std::string& what, double worst_residual)
      : Error(what), worst_residual(worst_residual) {}
  double worst_residual;
};

}  // namespace jbstar
