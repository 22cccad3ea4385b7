#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wheeler {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph, ordering, code or instance text. `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// An exponential search would exceed its configured bound.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

} // namespace wheeler
