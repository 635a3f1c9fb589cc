#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relscan {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The connecting vector (or a velocity required for a direction) is too
/// short to define a direction.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Capability or threshold parameters violate their invariants.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A rollout profile violates the friction limit or is structurally
/// unsound (e.g. a stop phase that never terminates).
class InvalidProfile : public Error {
 public:
  using Error::Error;
};

/// Malformed input data; carries the 1-based line number when known.
class FormatError : public Error {
 public:
  FormatError(std::int64_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit FormatError(const std::string& what) : Error(what), line_(0) {}
  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

/// One object id appears twice within a single frame.
class DuplicateId : public Error {
 public:
  using Error::Error;
};

/// The requested ego id does not exist in the frame.
class UnknownEgoId : public Error {
 public:
  using Error::Error;
};

/// An empirical distribution cannot be built from zero samples.
class EmptySample : public Error {
 public:
  using Error::Error;
};

/// A synthetic fixture request is out of range or inconsistent.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace relscan
