#pragma once

#include <stdexcept>
#include <string>

namespace ghkit {

/// Raised when an argument violates an operation's precondition: empty
/// subsets, mismatched sizes, malformed files, infeasible class tags.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exact search would exceed its configured size cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ghkit
