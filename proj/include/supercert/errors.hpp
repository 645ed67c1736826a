#pragma once

#include <stdexcept>
#include <string>

namespace supercert {

/// Caller violated a documented precondition (mismatched r, bad index, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside the supported range (r > 97, unknown class number, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element or polynomial has negative valuation where integrality is required.
class NonIntegralError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reduction produced something the operation cannot work with (e.g. zero polynomial).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A size or enumeration bound was exceeded.
class BoundExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace supercert
