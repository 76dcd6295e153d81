#pragma once

#include <stdexcept>
#include <string>

namespace majorlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function or exponent was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violated a structural invariant (Hermitian, PSD, projection...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exhausted its budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class RankError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input; `field()` names the offending key.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace majorlab
