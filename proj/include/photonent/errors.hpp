#pragma once

#include <stdexcept>
#include <string>

namespace photonent {

/// Raised when an argument violates an operation's precondition
/// (out-of-range probability, non-finite entries, unnormalized state, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when two objects that must share a basis or grid do not.
class BasisMismatch : public std::invalid_argument {
 public:
  explicit BasisMismatch(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace detail
}  // namespace photonent
