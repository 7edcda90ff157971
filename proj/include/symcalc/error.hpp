#pragma once

#include <stdexcept>
#include <string>

namespace symcalc {

/// Violated precondition or malformed input (fiber mismatch, depth too small, bad schema).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not produce a trustworthy answer
/// (rank-deficient fit, eigensolver failure, divergent series).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace symcalc
