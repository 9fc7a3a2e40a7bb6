#pragma once

#include <stdexcept>
#include <string>

namespace cgent {

// Base of every error thrown by the library. The CLI maps subclasses to exit
// codes: ConvergenceError -> 3, everything else -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A value object was handed data that breaks one of its invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class InvalidPairing : public Error {
 public:
  using Error::Error;
};

// The binning grid did not capture enough of the underlying probability.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double captured)
      : Error(what), captured_(captured) {}
  double captured_fraction() const noexcept { return captured_; }

 private:
  double captured_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PropagationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cgent
