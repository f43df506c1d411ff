#pragma once

#include <stdexcept>
#include <string>

namespace cheegerlab {

// Error taxonomy. The CLI maps these onto exit codes: invalid input and
// malformed usage -> 2, violated construction constraints -> 3, failed
// interval certification -> 4. Verification violations are reported through
// check reports, not exceptions.

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A domain construction was asked to proceed from parameters that break one
// of its admissibility conditions (hole sequence conditions, unvalidated
// sequences, ...).
struct ConstraintViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rigorous enclosure could not be produced (tail bound unavailable or too
// wide to separate the compared quantities).
struct CertificationFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested recursion depth cannot be materialized (memory or underflow).
struct DepthLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thresholding a relaxed indicator produced only empty sets.
struct DegenerateThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cheegerlab
