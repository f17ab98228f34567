#pragma once

#include <stdexcept>
#include <string>

namespace wsnlife {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class InvalidInput : public Error {
public:
  using Error::Error;
};

class NoSignChange : public Error {
public:
  using Error::Error;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

/// An approximation was asked to evaluate outside its validity domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// No cluster size up to the configured cap achieves the requested gain.
class UnreachableGain : public Error {
public:
  using Error::Error;
};

class NoRoute : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Raised when a model produces an unbounded LP; indicates a modeling bug.
class Unbounded : public Error {
public:
  using Error::Error;
};

}  // namespace wsnlife
