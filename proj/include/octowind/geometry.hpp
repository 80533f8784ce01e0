#pragma once

#include "octowind/octonion.hpp"

#include <numbers>
#include <string>
#include <string_view>

namespace octowind {

/// The three octonionic model spaces: flat O^1, the projective line OP^1
/// (a round 8-sphere of radius 1/2) and the hyperbolic line OH^1.
enum class SpaceKind { Flat, Projective, Hyperbolic };

std::string_view to_string(SpaceKind kind) noexcept;
/// Accepts "flat", "projective", "hyperbolic" (also "o1", "op1", "oh1").
SpaceKind parse_space(std::string_view name);

struct ModelSpace {
    SpaceKind kind = SpaceKind::Flat;

    /// Upper end of the radial domain: pi/2 for the projective line, +inf otherwise.
    double radial_upper() const noexcept;
    bool in_radial_domain(double r) const noexcept;
};

/// Drift b(r) of the radial diffusion dr = b(r) dt + dB:
/// 7/(2r), 7 cot(2r), 7 coth(2r).
double radial_drift(ModelSpace space, double r);

/// Integrand of the angular clock A_t: 1/r^2, 4/sin^2(2r), 4/sinh^2(2r).
double clock_rate(ModelSpace space, double r);

/// Geodesic distance from the origin for a chart point of norm |w|:
/// |w|, arctan|w|, artanh|w|.
double coord_radius(ModelSpace space, double w_norm);

/// Inverse of coord_radius: chart norm |w| at geodesic distance r.
double chart_norm(ModelSpace space, double r);

/// Coefficients of the Ito SDE dw = drift dt + diffusion dW in the
/// inhomogeneous chart (W a standard Brownian motion in O = R^8).
struct SdeCoefficients {
    Octonion drift;
    double diffusion;
};

SdeCoefficients coordinate_sde_coeffs(ModelSpace space, const Octonion& w);

/// Same diffusion coefficient, drift converted to the Stratonovich form
/// (drift_ito - diffusion * grad(diffusion) / 2).
SdeCoefficients coordinate_sde_coeffs_stratonovich(ModelSpace space, const Octonion& w);

}  // namespace octowind
