#pragma once

#include <stdexcept>
#include <string>

namespace orbitred {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical failure on well-formed input (inexpressible invariant,
/// no usable source component, singular system, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad dimensions, mismatched indeterminate sets, bad
/// degrees.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotExpressible : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoUsableSource : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace orbitred
