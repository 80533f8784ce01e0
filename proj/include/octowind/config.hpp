#pragma once

#include "octowind/geometry.hpp"
#include "octowind/octonion.hpp"
#include "octowind/sde.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace octowind {

enum class Command { Simulate, Charfn, Verify, Table };
enum class SimMode { Radial, Coordinate };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(SimMode m) noexcept;

struct ExperimentConfig {
    Command command = Command::Charfn;
    SpaceKind space = SpaceKind::Flat;
    std::vector<double> t{1.0};
    double dt = 1e-3;
    std::size_t paths = 10000;
    /// Starting radius; defaults to 1 (flat, hyperbolic) or pi/4 (projective).
    std::optional<double> r0;
    /// Starting chart point for coordinate runs; defaults to chart_norm(r0) e0.
    std::optional<Octonion> w0;
    std::vector<double> lambda{1.0};
    std::uint64_t seed = kDefaultSeed;
    /// Output file; empty means standard output.
    std::string output;
    Scheme scheme = Scheme::StratonovichHeun;
    std::optional<unsigned> threads;
    std::string suite = "all";
    SimMode mode = SimMode::Radial;
    std::size_t stride = 1;

    double effective_r0() const;
    Octonion effective_w0() const;
    /// Simulation settings for horizon t (seed = master seed).
    SimConfig sim_config(double t_end) const;
};

/// Every violation found while parsing or validating, one message each.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Sets one key from its text value. Unknown keys and malformed values are
/// appended to `errors`.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   std::vector<std::string>& errors);

/// Parses a key = value document ('#' starts a comment, lists are
/// comma-separated) or, when the first non-blank character is '{', a JSON
/// object. Unknown or repeated keys are errors. The result is validated.
/// Throws ConfigError listing all violations.
ExperimentConfig parse_config(std::string_view text);

/// Checks every numeric field against its domain; returns the violations.
std::vector<std::string> validation_errors(const ExperimentConfig& cfg);
/// Throws ConfigError if validation_errors is non-empty.
void validate(const ExperimentConfig& cfg);

/// Canonical key = value rendering of the settings that affect results
/// (output path and worker count excluded).
std::string canonical_string(const ExperimentConfig& cfg);
/// 64-bit FNV-1a hash of canonical_string.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string config_hash_hex(const ExperimentConfig& cfg);

}  // namespace octowind
