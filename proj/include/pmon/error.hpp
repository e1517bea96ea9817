#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmon {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed trace-log or property-spec input. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateParam : public ParseError {
 public:
  using ParseError::ParseError;
};

class SpecSyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UndeclaredParameter : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateEventDecl : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownEvent : public Error {
 public:
  using Error::Error;
};

class UnknownEventInPattern : public Error {
 public:
  using Error::Error;
};

class PatternSyntaxError : public Error {
 public:
  PatternSyntaxError(std::size_t pos, const std::string& what)
      : Error("pattern offset " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Instance domain larger than the configured subinstance enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A function was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmon
