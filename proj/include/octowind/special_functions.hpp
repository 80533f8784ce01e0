#pragma once

#include "octowind/geometry.hpp"
#include "octowind/octonion.hpp"

#include <limits>

namespace octowind {

/// Power-series evaluation of the modified Bessel function I_nu(x).
struct BesselSeries {
    double value;             // I_nu(x); +inf never returned, overflow throws
    double log_value;         // log I_nu(x), finite far beyond the overflow point
    int terms;                // number of series terms summed
    double truncation_bound;  // bound on the relative size of the neglected tail
};

/// I_nu(x) = sum_j (x/2)^(2j+nu) / (Gamma(1+j+nu) j!), summed until the
/// relative term size drops below 1e-16 (at most 500 terms).
/// Throws DomainError for nu < 0 or x < 0, NumericalError when the series
/// does not converge (x beyond roughly 700) or I_nu(x) overflows a double.
BesselSeries bessel_i_series(double nu, double x);
double bessel_i(double nu, double x);
/// log I_nu(x); -inf at x = 0 for nu > 0.
double log_bessel_i(double nu, double x);

/// nu = sqrt(9 + |lambda|^2), the Bessel index after the Girsanov tilt.
inline double tilted_index(double lambda_norm) {
    return std::sqrt(9.0 + lambda_norm * lambda_norm);
}

/// Flat-space Girsanov exponent mu = sqrt(9 + |lambda|^2) - 3.
inline double girsanov_mu(double lambda_norm) { return tilted_index(lambda_norm) - 3.0; }

/// E_rho[exp(-|lambda|^2 A_t / 2) | R(t) = r] = I_nu(rho r / t) / I_3(rho r / t).
double hartman_watson_ratio(double lambda_norm, double rho, double r, double t);

/// E_rho[exp(-|lambda|^2 A_t / 2)] for the 8-dimensional Bessel process,
/// by adaptive Gauss-Kronrod quadrature of
///   e^{-rho^2/2t} rho^-3 int_0^inf r^4 e^{-r^2/2} t^{3/2} I_nu(rho r / sqrt t) dr
/// to relative tolerance 1e-8. Throws NumericalError if the tolerance is missed.
double flat_laplace(double rho, double t, double lambda_norm);

/// flat_laplace evaluated at the log-scaled frequency sqrt(6 / log t) * |lambda|;
/// tends to exp(-|lambda|^2 / 2). Requires t > 1.
double flat_laplace_log_scaled(double rho, double t, double lambda_norm);

/// Limit characteristic functions.
double flat_limit_charfn(double lambda_norm);
double flat_limit_charfn(const ImVector7& lambda);
/// exp(-7 |lambda|^2 / 3): zeta(t)/sqrt(t) -> N(0, 14/3 I_7) on OP^1.
double op1_limit_charfn(double lambda_norm);
double op1_limit_charfn(const ImVector7& lambda);

/// A(lambda) = cosh^4(r0)/12 + (nu - 2) cosh^2(r0)/60 + (|lambda|^2 - 3 nu + 11)/720.
double oh1_a_coefficient(double lambda_norm, double r0);

/// lim_t E[exp(i lambda . zeta(t))] on OH^1:
///   tanh(r0)^(nu-3) (1 + (6 nu - 18) A(lambda) / cosh^6(r0)).
double oh1_limit_charfn(double lambda_norm, double r0);
double oh1_limit_charfn(const ImVector7& lambda, double r0);
/// The same limit written as tanh(r0)^(nu-3) / cosh^6(r0) * (cosh^6(r0) + (6 nu - 18) A).
double oh1_limit_charfn_expanded(double lambda_norm, double r0);
/// The same limit assembled from the moment cascade at t -> infinity.
double oh1_limit_from_cascade(double lambda_norm, double r0);

/// Tilted moments E^(a,b)[cosh^{2k}(r(t))], k = 1, 2, 3, of the hyperbolic
/// radial process with drift (a + 7/2) coth r + (b + 7/2) tanh r, where
/// a + b = -6. Obtained from
///   m2' = 4 m2 - (2b + 8),  m4' = 12 m4 - (4b + 20) m2,  m6' = 24 m6 - (6b + 36) m4.
struct MomentCascade {
    double m2;
    double m4;
    double m6;         // may be +inf for very large t
    double m6_scaled;  // e^{-24 t} m6, always finite
};
MomentCascade oh1_moment_cascade(double a_hat, double b_hat, double r0, double t);

/// Stationary law of the OP^1 radial process: density proportional to sin^7(2r) on (0, pi/2).
double op1_stationary_density(double r);
double op1_stationary_cdf(double r);
/// Stationary mean of the clock rate 4/sin^2(2r), by quadrature (equals 14/3).
double op1_stationary_mean_clock_rate();

/// A closed-form characteristic-function value with the parameters it was
/// evaluated at. t = +inf marks a limit.
struct CharFnValue {
    double value;
    SpaceKind space;
    double lambda_norm;
    double r0;
    double t = std::numeric_limits<double>::infinity();
};

}  // namespace octowind
