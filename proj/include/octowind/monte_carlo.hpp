#pragma once

#include "octowind/sde.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace octowind {

/// Copy of base whose seed is the stream for path `index`.
SimConfig path_config(const SimConfig& base, std::size_t index);

// Batches of independent paths. Path i always uses stream_seed(base.seed, i),
// so results are independent of the worker count (0 = resolve_workers()).

std::vector<RadialEndpoint> radial_batch(const SimConfig& base, std::size_t n_paths,
                                         RadialTilt tilt = {}, unsigned workers = 0);

std::vector<CoupledEndpoints> coupled_batch(const SimConfig& base, std::size_t n_paths,
                                            RadialTilt tilt = {}, unsigned workers = 0);

std::vector<WindingSample> timechange_batch(const SimConfig& base, std::size_t n_paths,
                                            unsigned workers = 0);

std::vector<WindingSample> line_integral_batch(const SimConfig& base, std::size_t n_paths,
                                               unsigned workers = 0);

std::vector<WindingSample> flat_exact_batch(double rho, std::span<const double> grid,
                                            std::uint64_t seed, std::size_t n_paths,
                                            unsigned workers = 0);

std::vector<double> clocks(std::span<const WindingSample> samples);

}  // namespace octowind
