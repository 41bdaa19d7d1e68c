#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hzeta {

// Arguments outside the supported domain (s < 2, argument below 2, bad shapes).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A pivot vanished at working precision; the caller should escalate.
class PrecisionExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The verification loop hit its precision ceiling without two agreeing runs.
class UnverifiableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Enumeration or summation budget above the configured cap.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace hzeta
