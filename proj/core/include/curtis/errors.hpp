#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curtis {

/// Raised when a result would need a cyclotomic field larger than the one allowed.
class ConductorError : public std::runtime_error {
 public:
  ConductorError(const std::string& what, std::int64_t minimal)
      : std::runtime_error(what + " (minimal sufficient conductor " + std::to_string(minimal) + ")"),
        minimal_(minimal) {}
  std::int64_t minimal_conductor() const { return minimal_; }

 private:
  std::int64_t minimal_;
};

/// Enumeration or search size exceeds the desk-scale guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace curtis
