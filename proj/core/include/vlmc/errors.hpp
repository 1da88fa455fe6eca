#pragma once

#include <stdexcept>
#include <string>

namespace vlmc {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown symbols, bad JSON, invalid parameters.
struct invalid_input : error {
  using error::error;
};

// A documented operation precondition does not hold for the given arguments.
struct precondition_violation : error {
  using error::error;
};

// A word is longer than the depth budget of a count trie.
struct depth_exceeded : precondition_violation {
  using precondition_violation::precondition_violation;
};

// Conditional probability requested on a zero-probability cylinder.
struct undefined_conditional : precondition_violation {
  using precondition_violation::precondition_violation;
};

// Brute-force enumeration would exceed the configured guard.
struct enumeration_too_large : precondition_violation {
  using precondition_violation::precondition_violation;
};

// Power iteration failed to reach the invariance tolerance.
struct no_convergence : error {
  using error::error;
};

// The loss-of-memory tail cannot be certified summable for this model.
struct summability_violation : error {
  using error::error;
};

}  // namespace vlmc
