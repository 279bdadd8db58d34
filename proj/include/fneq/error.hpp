#pragma once

#include <stdexcept>
#include <string>

namespace fneq {

/// Raised when caller-supplied data violates a documented precondition
/// (non-prime characteristic, reducible modulus, malformed expression, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic between values that live over different fields.
class FieldMismatch : public InputError {
 public:
  FieldMismatch() : InputError("field mismatch") {}
};

}  // namespace fneq
