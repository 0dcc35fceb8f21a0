#pragma once

#include <stdexcept>
#include <string>

namespace safebo {

/// Process exit codes used by the CLI.
enum class ExitCode : int {
    Ok = 0,
    Usage = 1,
    Config = 2,
    Numerical = 3,
    SafetyViolation = 4,
};

/// Invalid or inconsistent configuration (bad hyperparameters, bad benchmark, bad file).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A linear-algebra failure that survived jitter escalation.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double condition_estimate = 0.0)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    /// Reciprocal-condition based estimate of the condition number, 0 if unknown.
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Caller broke a documented precondition (e.g. point dimension mismatch).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace safebo
