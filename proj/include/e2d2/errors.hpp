#pragma once

#include <stdexcept>
#include <string>

namespace e2d2 {

// Base for everything this library throws. `code()` is a stable identifier
// used by the CLI for machine-readable error reporting.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Bad inputs: precondition and format violations. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical failures discovered while computing. CLI exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  explicit NotPositiveDefinite(const std::string& message)
      : NumericalError("NotPositiveDefinite", message) {}
};

class NotConverged : public NumericalError {
 public:
  explicit NotConverged(const std::string& message)
      : NumericalError("NotConverged", message) {}
};

class DegenerateDirection : public NumericalError {
 public:
  explicit DegenerateDirection(const std::string& message)
      : NumericalError("DegenerateDirection", message) {}
};

class DimensionMismatch : public ValidationError {
 public:
  explicit DimensionMismatch(const std::string& message)
      : ValidationError("DimensionMismatch", message) {}
};

class EmptyInput : public ValidationError {
 public:
  explicit EmptyInput(const std::string& message)
      : ValidationError("EmptyInput", message) {}
};

class NonFiniteInput : public ValidationError {
 public:
  explicit NonFiniteInput(const std::string& message)
      : ValidationError("NonFiniteInput", message) {}
};

class BetaOutOfRange : public ValidationError {
 public:
  explicit BetaOutOfRange(const std::string& message)
      : ValidationError("BetaOutOfRange", message) {}
};

class NonPositiveDiagonal : public ValidationError {
 public:
  explicit NonPositiveDiagonal(const std::string& message)
      : ValidationError("NonPositiveDiagonal", message) {}
};

class InvalidSpec : public ValidationError {
 public:
  explicit InvalidSpec(const std::string& message)
      : ValidationError("InvalidSpec", message) {}
};

class SingleClassData : public ValidationError {
 public:
  explicit SingleClassData(const std::string& message)
      : ValidationError("SingleClassData", message) {}
};

class InsufficientData : public ValidationError {
 public:
  explicit InsufficientData(const std::string& message)
      : ValidationError("InsufficientData", message) {}
};

class EmptyConfusion : public ValidationError {
 public:
  explicit EmptyConfusion(const std::string& message)
      : ValidationError("EmptyConfusion", message) {}
};

class UnmappedCode : public ValidationError {
 public:
  explicit UnmappedCode(const std::string& message)
      : ValidationError("UnmappedCode", message) {}
};

class MalformedDate : public ValidationError {
 public:
  explicit MalformedDate(const std::string& message)
      : ValidationError("MalformedDate", message) {}
};

class IoError : public ValidationError {
 public:
  explicit IoError(const std::string& message)
      : ValidationError("IoError", message) {}
};

}  // namespace e2d2
