#pragma once

#include <stdexcept>
#include <string>

namespace adaptivemon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value or document violates a configuration invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An indicator name was not registered with the knowledge base.
class UnknownIndicatorError : public Error {
 public:
  explicit UnknownIndicatorError(const std::string& name)
      : Error("unknown indicator '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A sample arrived with a timestamp not strictly after the previous one.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// A classifier received a window of the wrong length.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Rule document syntax or semantic error, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A wire message could not be decoded. `field()` names the offending field when known.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& message, std::string field = {})
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace adaptivemon
