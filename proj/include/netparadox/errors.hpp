#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netparadox {

/// Base class for every error raised by the library. `kind()` is the short
/// machine-readable tag the CLI puts into its error record.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Error tied to a line of an input file (1-based; 0 when not applicable).
class LineError : public Error {
 public:
  LineError(std::string kind, const std::string& message, std::size_t line)
      : Error(std::move(kind),
              line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public LineError {
 public:
  ParseError(const std::string& message, std::size_t line)
      : LineError("parse", message, line) {}
};

class ValidationError : public LineError {
 public:
  ValidationError(const std::string& message, std::size_t line = 0)
      : LineError("validation", message, line) {}
};

class ReferenceError : public LineError {
 public:
  ReferenceError(const std::string& message, std::size_t line = 0)
      : LineError("reference", message, line) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& message) : Error("size", message) {}
};

class EmptyInputError : public Error {
 public:
  explicit EmptyInputError(const std::string& message) : Error("empty_input", message) {}
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& message) : Error("spec", message) {}
};

class UndefinedMeanError : public SpecError {
 public:
  using SpecError::SpecError;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace netparadox
