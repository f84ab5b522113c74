#pragma once

#include <stdexcept>
#include <string>

namespace scar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (edge lists, scenario files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A state space would exceed the configured state budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A strategy produced a move outside the mover's action set.
class IllegalActionError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition on the game (not its inputs' syntax) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace scar
