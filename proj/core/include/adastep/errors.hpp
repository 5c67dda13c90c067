#pragma once

#include <stdexcept>
#include <string>

namespace adastep {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an API precondition (bad dimension, missing argument, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data is structurally valid but semantically unusable.
class DataError : public Error {
 public:
  using Error::Error;
};

// Text input could not be parsed; carries 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A computation produced a non-finite or otherwise unusable number.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Automatic initialization failed; the message suggests a manual override.
class InitError : public Error {
 public:
  using Error::Error;
};

// A schedule violates one of its admissibility conditions at construction.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// I/O failure on a file the caller named.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace adastep
