#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netmaps {

// Shapes that do not line up: node counts, block sizes, grid extents.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Values outside an operation's domain: non-positive budgets, bad codes, empty windows.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation only defined for a particular node count (3-D rendering needs n == 3).
class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  // 0 when the error does not originate from a config line (e.g. a --set override).
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netmaps
