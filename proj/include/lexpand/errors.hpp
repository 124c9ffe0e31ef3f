// errors.hpp -- exception types shared across the library.
//
// Every failure surfaced by the library is a subclass of lexpand::Error, so
// callers (CLI, bindings) can catch one type and still tell the categories
// apart when they need to map them to exit codes.

#ifndef LEXPAND_ERRORS_HPP
#define LEXPAND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexpand {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed content in a file being parsed.  Carries the file name, the
// 1-based line number and the 1-based byte column of the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
              ": " + message),
        file_(file),
        line_(line),
        column_(column),
        message_(message) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// A required file or directory is missing or unreadable.
class LoadError : public Error {
 public:
  explicit LoadError(const std::string& what_arg) : Error(what_arg) {}
};

// The files parsed individually, but cross-references between them are
// broken: dangling pointer targets, duplicate offsets, hypernym cycles.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what_arg) : Error(what_arg) {}
};

// Invalid configuration value or malformed configuration file.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what_arg) : Error(what_arg) {}
};

// A remote or local document could not be fetched.
class FetchError : public Error {
 public:
  explicit FetchError(const std::string& what_arg) : Error(what_arg) {}
};

}  // namespace lexpand

#endif  // LEXPAND_ERRORS_HPP
