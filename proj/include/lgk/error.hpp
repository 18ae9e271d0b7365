#pragma once

#include <stdexcept>
#include <string>

namespace lgk {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Incompatible dimensions in a matrix or level sequence.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold; the message names the witness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An identity that holds by theorem failed: a construction bug or an
/// inconsistent input system.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or closure bound was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgk
