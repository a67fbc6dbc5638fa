#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordtww {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed text input. line() is 1-based, or 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out = what;
    if (line > 0) out += " (line " + std::to_string(line);
    if (line > 0 && column > 0) out += ", column " + std::to_string(column);
    if (line > 0) out += ")";
    return out;
  }

  std::size_t line_;
  std::size_t column_;
};

// A certificate failed a structural check. location() names the offending step or cell.
class CertificateInvalid : public Error {
 public:
  CertificateInvalid(const std::string& what, std::string location)
      : Error(what + " at " + location), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace ordtww
