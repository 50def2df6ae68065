#pragma once

#include <stdexcept>
#include <string>

namespace cylalg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size limit was exceeded (space capacity, carrier cap, search budget).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Two values from different tuple spaces, bases or signatures were combined.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition (index range, i = j, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `position` is a 0-based character offset, or line
/// number for line-oriented formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cylalg
