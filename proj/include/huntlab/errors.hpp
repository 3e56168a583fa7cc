#pragma once

#include <stdexcept>
#include <string>

namespace huntlab {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An intermediate quantity left the representable double range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A value cannot be represented in the requested (direct, non-log) form.
class RepresentationError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace huntlab
