#pragma once

#include <stdexcept>
#include <string>

namespace sierpinski {

/// Raised when arguments violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an instance is larger than the configured size cap.
class SizeCapExceeded : public std::runtime_error {
 public:
  explicit SizeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a constructive routine breaks one of its own invariants.
/// The message carries the atom-level diagnostics that led to the failure.
class ConstructionFailure : public std::logic_error {
 public:
  explicit ConstructionFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sierpinski
