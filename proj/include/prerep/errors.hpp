#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prerep {

/// Invalid input to an operation: bad config, precondition violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic failure in the exact layer (division by zero, zero denominator).
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A product or search would exceed the configured size cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what, std::size_t projected, std::size_t cap)
      : std::length_error(what + ": projected " + std::to_string(projected) +
                          " exceeds cap " + std::to_string(cap)),
        projected_(projected),
        cap_(cap) {}

  std::size_t projected() const { return projected_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t projected_;
  std::size_t cap_;
};

/// Numerical procedure did not produce an acceptable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prerep
