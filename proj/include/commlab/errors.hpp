#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commlab {

/// Error categories; each maps onto one CLI exit code.
enum class ErrorKind {
    io,              // exit 1
    parse,           // exit 2
    validation,      // exit 2
    undefined_math,  // exit 3
};

int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// Node index outside [0, N).
class IndexError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Exhaustive search refused because the input is too large.
class SizeLimitError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Modularity is undefined when the total edge weight M is zero.
class UndefinedModularityError : public Error {
  public:
    explicit UndefinedModularityError(const std::string& what)
        : Error(ErrorKind::undefined_math, what) {}
};

}  // namespace commlab
