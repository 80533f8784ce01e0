#include "octowind/geometry.hpp"

#include "octowind/errors.hpp"

#include <cmath>
#include <limits>

namespace octowind {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_radial(ModelSpace space, double r, const char* op) {
    if (!space.in_radial_domain(r)) {
        throw DomainError(std::string(op) + ": r = " + std::to_string(r) +
                          " is outside the radial domain of the " +
                          std::string(to_string(space.kind)) + " space");
    }
}

}  // namespace

std::string_view to_string(SpaceKind kind) noexcept {
    switch (kind) {
        case SpaceKind::Flat: return "flat";
        case SpaceKind::Projective: return "projective";
        case SpaceKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

SpaceKind parse_space(std::string_view name) {
    if (name == "flat" || name == "o1") return SpaceKind::Flat;
    if (name == "projective" || name == "op1") return SpaceKind::Projective;
    if (name == "hyperbolic" || name == "oh1") return SpaceKind::Hyperbolic;
    throw DomainError("unknown space '" + std::string(name) +
                      "' (expected flat, projective or hyperbolic)");
}

double ModelSpace::radial_upper() const noexcept {
    return kind == SpaceKind::Projective ? kHalfPi : std::numeric_limits<double>::infinity();
}

bool ModelSpace::in_radial_domain(double r) const noexcept {
    return r > 0.0 && r < radial_upper();
}

double radial_drift(ModelSpace space, double r) {
    require_radial(space, r, "radial_drift");
    switch (space.kind) {
        case SpaceKind::Flat: return 3.5 / r;
        case SpaceKind::Projective: return 7.0 / std::tan(2.0 * r);
        case SpaceKind::Hyperbolic: return 7.0 / std::tanh(2.0 * r);
    }
    return 0.0;
}

double clock_rate(ModelSpace space, double r) {
    require_radial(space, r, "clock_rate");
    switch (space.kind) {
        case SpaceKind::Flat: return 1.0 / (r * r);
        case SpaceKind::Projective: {
            const double s = std::sin(2.0 * r);
            return 4.0 / (s * s);
        }
        case SpaceKind::Hyperbolic: {
            const double s = std::sinh(2.0 * r);
            return 4.0 / (s * s);
        }
    }
    return 0.0;
}

double coord_radius(ModelSpace space, double w_norm) {
    if (!(w_norm >= 0.0)) throw DomainError("coord_radius: |w| must be non-negative");
    switch (space.kind) {
        case SpaceKind::Flat: return w_norm;
        case SpaceKind::Projective: return std::atan(w_norm);
        case SpaceKind::Hyperbolic:
            if (!(w_norm < 1.0)) {
                throw DomainError("coord_radius: hyperbolic chart requires |w| < 1, got " +
                                  std::to_string(w_norm));
            }
            return std::atanh(w_norm);
    }
    return 0.0;
}

double chart_norm(ModelSpace space, double r) {
    switch (space.kind) {
        case SpaceKind::Flat:
            if (!(r >= 0.0)) break;
            return r;
        case SpaceKind::Projective:
            if (!(r >= 0.0 && r < kHalfPi)) break;
            return std::tan(r);
        case SpaceKind::Hyperbolic:
            if (!(r >= 0.0)) break;
            return std::tanh(r);
    }
    throw DomainError("chart_norm: r = " + std::to_string(r) + " is outside the chart");
}

namespace {

// |w|^2 -> (diffusion sigma, Ito drift factor kappa) with drift = kappa * w
struct ChartScalars {
    double sigma;
    double ito_factor;
    double strat_factor;
};

ChartScalars chart_scalars(ModelSpace space, const Octonion& w) {
    const double n2 = norm_sq(w);
    switch (space.kind) {
        case SpaceKind::Flat: return {1.0, 0.0, 0.0};
        case SpaceKind::Projective: {
            if (!std::isfinite(n2)) throw DomainError("coordinate_sde_coeffs: w is not finite");
            const double sec2 = 1.0 + n2;  // sec^2 r with tan r = |w|
            // grad(sigma) = 2w, so the Stratonovich drift picks up -sigma * w
            return {sec2, -6.0 * sec2, -7.0 * sec2};
        }
        case SpaceKind::Hyperbolic: {
            if (!(n2 < 1.0)) {
                throw DomainError("coordinate_sde_coeffs: hyperbolic chart requires |w| < 1");
            }
            const double sech2 = 1.0 - n2;  // sech^2 r with tanh r = |w|
            return {sech2, 6.0 * sech2, 7.0 * sech2};
        }
    }
    return {1.0, 0.0, 0.0};
}

}  // namespace

SdeCoefficients coordinate_sde_coeffs(ModelSpace space, const Octonion& w) {
    const auto s = chart_scalars(space, w);
    return {w * s.ito_factor, s.sigma};
}

SdeCoefficients coordinate_sde_coeffs_stratonovich(ModelSpace space, const Octonion& w) {
    const auto s = chart_scalars(space, w);
    return {w * s.strat_factor, s.sigma};
}

}  // namespace octowind
