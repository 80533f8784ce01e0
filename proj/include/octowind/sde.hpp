#pragma once

#include "octowind/geometry.hpp"
#include "octowind/octonion.hpp"
#include "octowind/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace octowind {

enum class Scheme { EulerMaruyama, StratonovichHeun };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20240611ULL;

/// Default radius beyond which coordinate simulation hands over to the
/// skew-product representation: 1.45 on OP^1 (sec^2 r blows up at pi/2),
/// 6 on OH^1 (tanh r saturates in double precision), none on O^1.
double default_chart_r_max(SpaceKind kind) noexcept;

struct SimConfig {
    ModelSpace space{};
    double t_end = 1.0;
    /// Upper bound on the step; the grid uses t_end / ceil(t_end / dt).
    double dt = 1e-3;
    double r0 = 1.0;
    Octonion w0 = Octonion::basis(0);
    Scheme scheme = Scheme::StratonovichHeun;
    std::uint64_t seed = kDefaultSeed;

    double r_min = 1e-6;
    /// Coordinate-chart handover radius; unset means default_chart_r_max.
    std::optional<double> chart_r_max;
    /// A coordinate step with |dw| > chart_safety * |w| is split in two by a
    /// Brownian bridge.
    double chart_safety = 0.5;
    /// Record every k-th grid point (the final point is always kept).
    std::size_t record_stride = 1;
    /// Multiplies every Brownian increment. 0 gives the deterministic skeleton.
    double noise_scale = 1.0;

    std::size_t n_steps() const;
    double step() const { return t_end / static_cast<double>(n_steps()); }
    double effective_chart_r_max() const;

    /// Throws DomainError naming the first violated bound.
    void validate_radial() const;
    void validate_coordinate() const;
};

/// Girsanov tilt of the radial drift. Flat: drift (7 + 2 mu) / (2r) with
/// mu = a. Hyperbolic: drift (a + 7/2) coth r + (b + 7/2) tanh r.
struct RadialTilt {
    double a = 0.0;
    double b = 0.0;

    bool is_zero() const noexcept { return a == 0.0 && b == 0.0; }
    static RadialTilt flat(double mu) { return {mu, 0.0}; }
    static RadialTilt hyperbolic(double a_hat, double b_hat) { return {a_hat, b_hat}; }
    /// (a_hat, b_hat) = (-3 + nu, -3 - nu) with nu = sqrt(9 + |lambda|^2).
    static RadialTilt hyperbolic_for_lambda(double lambda_norm);
};

/// Discretised radial trajectory with the running clock on the same grid.
struct RadialPath {
    std::vector<double> times;
    std::vector<double> r;
    std::vector<double> clock;
    std::uint64_t seed = 0;

    double t_end() const { return times.back(); }
    double r_end() const { return r.back(); }
    double clock_end() const { return clock.back(); }
};

struct RadialEndpoint {
    double t_end = 0.0;
    double r_end = 0.0;
    double clock_end = 0.0;
};

enum class Provenance { TimeChange, LineIntegral };
std::string_view to_string(Provenance p) noexcept;

/// One Monte Carlo draw of the winding functional zeta(t).
struct WindingSample {
    ImVector7 zeta;
    double t_end = 0.0;
    /// A_t along the radial part, when it was tracked.
    std::optional<double> clock_end;
    Provenance provenance = Provenance::TimeChange;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::StratonovichHeun;
    double dt = 0.0;
    /// Time at which a coordinate run handed over to the skew-product form.
    std::optional<double> switched_at;
};

/// Single-step map of the radial SDE. Steps within 5 sqrt(h) of a domain
/// endpoint are taken drift-implicitly, which keeps r inside the domain.
class RadialStepper {
public:
    RadialStepper(ModelSpace space, RadialTilt tilt, Scheme scheme, double h, double r_min);

    double drift(double r) const noexcept;
    double rate(double r) const noexcept;
    /// Advance r by one step with Brownian increment dB; t_next only labels
    /// the SimulationError raised on a domain exit.
    double step(double r, double dB, double t_next) const;

    double h() const noexcept { return h_; }

private:
    double implicit_step(double r, double dB) const;

    ModelSpace space_;
    RadialTilt tilt_;
    bool tilted_;
    Scheme scheme_;
    double h_;
    double r_min_;
    double upper_;
    double layer_;
};

/// Trajectory of the radial diffusion with A_t by the trapezoidal rule.
RadialPath simulate_radial(const SimConfig& cfg);
/// Same, driven by caller-supplied Brownian increments (one per grid step).
RadialPath simulate_radial(const SimConfig& cfg, std::span<const double> increments);

/// Radial path under the Girsanov-tilted measure. A zero tilt reproduces
/// simulate_radial exactly.
RadialPath simulate_tilted_radial(const SimConfig& cfg, RadialTilt tilt);
RadialPath simulate_tilted_radial(const SimConfig& cfg, RadialTilt tilt,
                                  std::span<const double> increments);

/// Endpoint-only variants for Monte Carlo; bit-identical to the path versions.
RadialEndpoint simulate_radial_endpoint(const SimConfig& cfg, RadialTilt tilt = {});

/// Two discretisations (steps h and 2h) driven by one Brownian path, for
/// step-halving studies. cfg.n_steps() must be even.
struct CoupledEndpoints {
    RadialEndpoint fine;
    RadialEndpoint coarse;
};
CoupledEndpoints simulate_radial_coupled(const SimConfig& cfg, RadialTilt tilt = {});

/// n increments of a Brownian motion on a grid of step h.
std::vector<double> brownian_increments(std::size_t n, double h, Rng& rng);
/// Sums consecutive pairs: increments of the same path on the grid of step 2h.
std::vector<double> coarsen_increments(std::span<const double> increments);

/// Trapezoidal A_t along a recorded path.
double accumulate_clock(const RadialPath& path, ModelSpace space);

/// zeta(t) ~ N(0, A_t I_7) given the radial path: the exact conditional law,
/// since the angular motion is independent of r.
WindingSample sample_winding_timechange(const RadialPath& path, Rng& rng);
WindingSample sample_winding_timechange(const RadialEndpoint& end, Rng& rng);

/// Radial endpoint plus conditional Gaussian winding, all from Rng(cfg.seed).
WindingSample simulate_timechange_winding(const SimConfig& cfg);

/// Time grid for exact flat simulation: uniform steps of dt_uniform up to
/// t_uniform, then geometric steps with the given ratio up to t_end.
std::vector<double> flat_log_grid(double t_end, double dt_uniform = 1e-3, double t_uniform = 1.0,
                                  double ratio = 1.01);

/// Bessel(8) endpoint from exact squared-Bessel transitions on the grid:
/// R^2(t+h) = h ((Z + R(t)/sqrt h)^2 + chi^2_7). The clock uses the
/// trapezoidal rule on the same grid.
RadialEndpoint simulate_flat_exact(double rho, std::span<const double> grid, Rng& rng);

/// Exact flat endpoint plus conditional Gaussian winding, all from Rng(seed).
WindingSample simulate_flat_exact_winding(double rho, std::span<const double> grid,
                                          std::uint64_t seed);

struct CoordinatePath {
    std::vector<double> times;
    std::vector<Octonion> w;
    std::vector<ImVector7> zeta;
};

struct CoordinateResult {
    CoordinatePath path;
    WindingSample sample;
};

/// Simulates w(t) in the inhomogeneous chart and accumulates the
/// Stratonovich line integral of the winding form with midpoint evaluation.
/// Past cfg.effective_chart_r_max() the run continues on the radial process
/// and the remaining winding is drawn from its conditional Gaussian law.
CoordinateResult simulate_coordinate(const SimConfig& cfg);

/// Endpoint-only variant (no path storage).
WindingSample simulate_coordinate_winding(const SimConfig& cfg);

void write_radial_csv(std::ostream& os, const RadialPath& path, std::string_view comment = {});
void write_coordinate_csv(std::ostream& os, const CoordinatePath& path,
                          std::string_view comment = {});

}  // namespace octowind
