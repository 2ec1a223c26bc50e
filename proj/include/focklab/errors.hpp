#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

// Closed-form exponential would leave the double range.
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enlarging the integration domain still moves the result.
struct TailNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Series truncation too short for the requested tolerance.
struct TruncationInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative decomposition failed to converge.
struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schatten diagnostics requested for an operator that is not compact.
struct NotCompact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric evidence contradicts the rule-based verdict; never swallowed.
struct WitnessDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scan mode incompatible with the exponent pair.
struct ModeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace focklab
