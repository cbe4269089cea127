#pragma once

#include <stdexcept>
#include <string>

namespace overdet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radius function not strictly positive, or malformed domain input.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

/// Least-squares system for the harmonic basis is rank deficient.
class IllConditionedBasis : public Error {
 public:
  using Error::Error;
};

class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

/// beta = (alpha+2)(c0(alpha+N)-1) is a negative integer.
class InadmissibleBeta : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A user-supplied callback returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Shape recovery could not continue; carries the failing iterate index.
class RecoveryFailure : public Error {
 public:
  RecoveryFailure(std::size_t iterate, const std::string& what)
      : Error("iterate " + std::to_string(iterate) + ": " + what), iterate_(iterate) {}

  std::size_t iterate() const noexcept { return iterate_; }

 private:
  std::size_t iterate_;
};

}  // namespace overdet
