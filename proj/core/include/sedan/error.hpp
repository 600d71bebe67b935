#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sedan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source position, 1-based.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourcePos pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
              ": " + message),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Raised while evaluating a term (unbound variable, unknown function,
/// recursion depth exceeded).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Raised when a form cannot be added to the world.
class AdmissionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sedan
