#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace octowind {

struct CheckResult {
    std::string name;
    double observed = 0.0;  // worst error (or statistic) seen
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

/// Octonion property suite: norm multiplicativity over n_pairs random pairs,
/// both alternative laws, inverses, the coordinate winding formulas over
/// n_eta pairs, winding_form(x, x) = 0 and a non-associative basis triple.
SuiteReport run_algebra_suite(std::uint64_t seed, std::size_t n_pairs = 100000,
                              std::size_t n_eta = 10000);

/// Model-space checks: finite-difference generator consistency, clock
/// positivity, the projective/hyperbolic duality and the 1/sinh^2 identity.
SuiteReport run_geometry_suite(std::uint64_t seed);

/// Special-function checks: half-integer Bessel closed form, normalisation of
/// the flat transform, the two forms of the hyperbolic limit, the moment
/// cascade limit and the stationary mean clock rate.
SuiteReport run_special_suite();

/// JSON object {"suite": ..., "pass": ..., "checks": [...]}.
std::string to_json(const std::vector<SuiteReport>& reports);

}  // namespace octowind
