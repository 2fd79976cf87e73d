#pragma once

#include <stdexcept>

namespace misync {

// Error taxonomy used across the library. Messages are prefixed with the
// originating component ("laplacian: ...") so CLI users see provenance.

// Caller passed arguments outside the documented domain.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input data violates a structural requirement (disconnected graph, bad index).
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric procedure failed to reach its documented tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a configured capability (e.g. irrep index above the cap).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// User-supplied callable produced an unusable value.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input; message carries the line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace misync
