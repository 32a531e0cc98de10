#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

/// An argument outside the mathematical domain of a response function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A query outside a tabulated range (tables never extrapolate).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class LookupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The configuration does not match any closed-form scenario.
class ClassificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace casimir
