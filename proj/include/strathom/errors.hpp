#pragma once

#include <stdexcept>
#include <string>

namespace strathom {

/// Malformed input text or arguments (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured search or size bound was exceeded (CLI exit code 3).
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition failed; the message names the failure.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace strathom
