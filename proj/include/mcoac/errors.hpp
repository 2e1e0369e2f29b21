#pragma once

#include <stdexcept>
#include <string>

namespace mcoac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two nodes share a position, so a path-loss gain is undefined.
class CoincidentNodeError : public Error {
 public:
  using Error::Error;
};

/// Transmit grids disagree on the resource layout.
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A label in the global dataset has no eligible edge device.
class UnplacedSampleError : public Error {
 public:
  using Error::Error;
};

/// Evaluation set is empty after label filtering.
class EmptyEvaluationError : public Error {
 public:
  using Error::Error;
};

/// Configuration error carrying the dotted path of the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mcoac
