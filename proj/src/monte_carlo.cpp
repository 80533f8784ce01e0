#include "octowind/monte_carlo.hpp"

#include "octowind/errors.hpp"
#include "octowind/parallel.hpp"

namespace octowind {

SimConfig path_config(const SimConfig& base, std::size_t index) {
    SimConfig c = base;
    c.seed = stream_seed(base.seed, index);
    return c;
}

std::vector<RadialEndpoint> radial_batch(const SimConfig& base, std::size_t n_paths,
                                         RadialTilt tilt, unsigned workers) {
    base.validate_radial();
    return parallel_map(
        n_paths,
        [&](std::size_t i) { return simulate_radial_endpoint(path_config(base, i), tilt); },
        workers);
}

std::vector<CoupledEndpoints> coupled_batch(const SimConfig& base, std::size_t n_paths,
                                            RadialTilt tilt, unsigned workers) {
    base.validate_radial();
    return parallel_map(
        n_paths,
        [&](std::size_t i) { return simulate_radial_coupled(path_config(base, i), tilt); },
        workers);
}

std::vector<WindingSample> timechange_batch(const SimConfig& base, std::size_t n_paths,
                                            unsigned workers) {
    base.validate_radial();
    return parallel_map(
        n_paths, [&](std::size_t i) { return simulate_timechange_winding(path_config(base, i)); },
        workers);
}

std::vector<WindingSample> line_integral_batch(const SimConfig& base, std::size_t n_paths,
                                               unsigned workers) {
    base.validate_coordinate();
    return parallel_map(
        n_paths, [&](std::size_t i) { return simulate_coordinate_winding(path_config(base, i)); },
        workers);
}

std::vector<WindingSample> flat_exact_batch(double rho, std::span<const double> grid,
                                            std::uint64_t seed, std::size_t n_paths,
                                            unsigned workers) {
    return parallel_map(
        n_paths,
        [&](std::size_t i) { return simulate_flat_exact_winding(rho, grid, stream_seed(seed, i)); },
        workers);
}

std::vector<double> clocks(std::span<const WindingSample> samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.clock_end) throw DomainError("clocks: sample carries no clock value");
        out.push_back(*s.clock_end);
    }
    return out;
}

}  // namespace octowind
