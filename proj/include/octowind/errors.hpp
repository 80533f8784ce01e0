#pragma once

#include <stdexcept>
#include <string>

namespace octowind {

/// Raised when an argument lies outside the domain of an operation
/// (zero octonion, radius outside a chart, negative order, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A simulated path left its admissible domain. Carries the time of exit.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, double exit_time)
        : std::runtime_error(what), exit_time_(exit_time) {}

    double exit_time() const noexcept { return exit_time_; }

private:
    double exit_time_;
};

/// Numerical integration or series evaluation failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace octowind
