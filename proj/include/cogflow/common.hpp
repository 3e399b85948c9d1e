#pragma once

#include <stdexcept>
#include <string>

namespace cogflow {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed primitive line; carries 1-based line/column of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Missing or mis-ordered response tag; tag() names the first offender ("order" for ordering).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& tag)
      : Error("malformed response: " + tag), tag_(tag) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class DegenerateEmbedding : public Error {
 public:
  using Error::Error;
};

class MissingGroundTruth : public Error {
 public:
  using Error::Error;
};

class EmptyChain : public Error {
 public:
  using Error::Error;
};

class SupportMismatch : public Error {
 public:
  using Error::Error;
};

/// File-level I/O failure (missing file, unreadable path, bad schema header).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cogflow
