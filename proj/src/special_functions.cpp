#include "octowind/special_functions.hpp"

#include "octowind/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace octowind {

namespace {

constexpr int kMaxSeriesTerms = 500;
constexpr double kSeriesTol = 1e-16;
constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);

}  // namespace

BesselSeries bessel_i_series(double nu, double x) {
    if (!(nu >= 0.0)) throw DomainError("bessel_i: order must be non-negative");
    if (!(x >= 0.0)) throw DomainError("bessel_i: argument must be non-negative");
    if (x == 0.0) {
        if (nu == 0.0) return {1.0, 0.0, 1, 0.0};
        return {0.0, -std::numeric_limits<double>::infinity(), 1, 0.0};
    }
    if (!std::isfinite(x)) throw NumericalError("bessel_i: argument is not finite");

    // Terms relative to the leading one, rescaled whenever they grow large.
    const double q = 0.25 * x * x;
    double log_scale = nu * std::log(0.5 * x) - boost::math::lgamma(nu + 1.0);
    double term = 1.0;
    double sum = 1.0;
    int j = 0;
    double bound = 0.0;
    bool converged = false;
    while (j < kMaxSeriesTerms) {
        ++j;
        term *= q / (static_cast<double>(j) * (static_cast<double>(j) + nu));
        sum += term;
        if (sum > kRescale) {
            sum /= kRescale;
            term /= kRescale;
            log_scale += kLogRescale;
        }
        const double ratio = q / ((j + 1.0) * (j + 1.0 + nu));
        if (ratio < 1.0 && term < kSeriesTol * sum) {
            // remaining terms shrink at least geometrically with this ratio
            bound = term * ratio / ((1.0 - ratio) * sum);
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericalError("bessel_i: series did not converge in " +
                             std::to_string(kMaxSeriesTerms) + " terms for x = " +
                             std::to_string(x));
    }
    const double log_value = log_scale + std::log(sum);
    if (log_value > std::log(std::numeric_limits<double>::max())) {
        throw NumericalError("bessel_i: I_nu(x) overflows double precision at x = " +
                             std::to_string(x));
    }
    return {std::exp(log_value), log_value, j + 1, bound};
}

double bessel_i(double nu, double x) { return bessel_i_series(nu, x).value; }

double log_bessel_i(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    // log_value stays finite past the double overflow point, so bypass the check
    if (!(nu >= 0.0)) throw DomainError("log_bessel_i: order must be non-negative");
    if (!(x >= 0.0)) throw DomainError("log_bessel_i: argument must be non-negative");
    const double q = 0.25 * x * x;
    double log_scale = nu * std::log(0.5 * x) - boost::math::lgamma(nu + 1.0);
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= kMaxSeriesTerms; ++j) {
        term *= q / (static_cast<double>(j) * (static_cast<double>(j) + nu));
        sum += term;
        if (sum > kRescale) {
            sum /= kRescale;
            term /= kRescale;
            log_scale += kLogRescale;
        }
        if (q < (j + 1.0) * (j + 1.0 + nu) && term < kSeriesTol * sum) {
            return log_scale + std::log(sum);
        }
    }
    throw NumericalError("log_bessel_i: series did not converge for x = " + std::to_string(x));
}

double hartman_watson_ratio(double lambda_norm, double rho, double r, double t) {
    if (!(rho > 0.0) || !(r > 0.0) || !(t > 0.0)) {
        throw DomainError("hartman_watson_ratio: rho, r and t must be positive");
    }
    const double nu = tilted_index(lambda_norm);
    if (nu == 3.0) return 1.0;
    const double z = rho * r / t;
    return std::exp(log_bessel_i(nu, z) - log_bessel_i(3.0, z));
}

double flat_laplace(double rho, double t, double lambda_norm) {
    if (!(rho > 0.0) || !(t > 0.0)) throw DomainError("flat_laplace: rho and t must be positive");
    const double nu = tilted_index(lambda_norm);
    const double s = rho / std::sqrt(t);
    const double log_s = std::log(s);
    // e^{-rho^2/2t} e^{-u^2/2} I_nu(s u) = e^{-(u-s)^2/2} [e^{-su} I_nu(su)], and t^{3/2}/rho^3 = s^-3
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = s * u;
        const double d = u - s;
        return std::exp(4.0 * std::log(u) - 0.5 * d * d + log_bessel_i(nu, x) - x - 3.0 * log_s);
    };
    const double r_cut = s + 14.0;
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, r_cut, 20, 1e-11, &err);
    if (!std::isfinite(value) || err > 1e-8 * std::abs(value)) {
        throw NumericalError("flat_laplace: quadrature missed tolerance (estimate " +
                             std::to_string(value) + ", error " + std::to_string(err) + ")");
    }
    return value;
}

double flat_laplace_log_scaled(double rho, double t, double lambda_norm) {
    if (!(t > 1.0)) throw DomainError("flat_laplace_log_scaled: t must exceed 1");
    return flat_laplace(rho, t, std::sqrt(6.0 / std::log(t)) * lambda_norm);
}

double flat_limit_charfn(double lambda_norm) {
    return std::exp(-0.5 * lambda_norm * lambda_norm);
}

double flat_limit_charfn(const ImVector7& lambda) { return flat_limit_charfn(lambda.norm()); }

double op1_limit_charfn(double lambda_norm) {
    return std::exp(-7.0 / 3.0 * lambda_norm * lambda_norm);
}

double op1_limit_charfn(const ImVector7& lambda) { return op1_limit_charfn(lambda.norm()); }

namespace {

void require_r0(double r0, const char* op) {
    if (!(r0 > 0.0) || !std::isfinite(r0)) {
        throw DomainError(std::string(op) + ": r0 must be positive and finite");
    }
}

}  // namespace

double oh1_a_coefficient(double lambda_norm, double r0) {
    require_r0(r0, "oh1_a_coefficient");
    const double nu = tilted_index(lambda_norm);
    const double c2 = std::cosh(r0) * std::cosh(r0);
    const double l2 = lambda_norm * lambda_norm;
    return c2 * c2 / 12.0 + (nu - 2.0) * c2 / 60.0 + (l2 - 3.0 * nu + 11.0) / 720.0;
}

double oh1_limit_charfn(double lambda_norm, double r0) {
    require_r0(r0, "oh1_limit_charfn");
    const double nu = tilted_index(lambda_norm);
    const double c = std::cosh(r0);
    const double c6 = c * c * c * c * c * c;
    return std::pow(std::tanh(r0), nu - 3.0) *
           (1.0 + (6.0 * nu - 18.0) * oh1_a_coefficient(lambda_norm, r0) / c6);
}

double oh1_limit_charfn(const ImVector7& lambda, double r0) {
    return oh1_limit_charfn(lambda.norm(), r0);
}

double oh1_limit_charfn_expanded(double lambda_norm, double r0) {
    require_r0(r0, "oh1_limit_charfn_expanded");
    const double nu = tilted_index(lambda_norm);
    const double c = std::cosh(r0);
    const double c6 = c * c * c * c * c * c;
    return std::pow(std::tanh(r0), nu - 3.0) / c6 *
           (c6 + (6.0 * nu - 18.0) * oh1_a_coefficient(lambda_norm, r0));
}

MomentCascade oh1_moment_cascade(double a_hat, double b_hat, double r0, double t) {
    require_r0(r0, "oh1_moment_cascade");
    if (!(t >= 0.0)) throw DomainError("oh1_moment_cascade: t must be non-negative");
    if (std::abs(a_hat + b_hat + 6.0) > 1e-9 * (1.0 + std::abs(a_hat) + std::abs(b_hat))) {
        throw DomainError("oh1_moment_cascade: requires a_hat + b_hat = -6");
    }
    const double ch = std::cosh(r0);
    const double c2 = ch * ch;
    const double c4 = c2 * c2;
    const double c6 = c4 * c2;
    const double k = (2.0 * b_hat + 8.0) / 4.0;
    const double k4 = 4.0 * b_hat + 20.0;
    const double k6 = 6.0 * b_hat + 36.0;

    // m2 = (c2 - k) e^{4t} + k
    // m4 = C4 e^{12t} + k4 (c2 - k)/8 e^{4t} + k4 k / 12
    const double C4 = c4 - k4 * ((c2 - k) / 8.0 + k / 12.0);
    // e^{-24t} m6 = c6 - k6 int_0^t e^{-24s} m4(s) ds
    const double integral = C4 * (-std::expm1(-12.0 * t)) / 12.0 +
                            k4 * (c2 - k) / 8.0 * (-std::expm1(-20.0 * t)) / 20.0 +
                            k4 * k / 12.0 * (-std::expm1(-24.0 * t)) / 24.0;
    MomentCascade m;
    m.m2 = (c2 - k) * std::exp(4.0 * t) + k;
    m.m4 = C4 * std::exp(12.0 * t) + k4 * (c2 - k) / 8.0 * std::exp(4.0 * t) + k4 * k / 12.0;
    m.m6_scaled = c6 - k6 * integral;
    m.m6 = m.m6_scaled * std::exp(24.0 * t);
    return m;
}

double oh1_limit_from_cascade(double lambda_norm, double r0) {
    require_r0(r0, "oh1_limit_from_cascade");
    const double nu = tilted_index(lambda_norm);
    const auto m = oh1_moment_cascade(-3.0 + nu, -3.0 - nu, r0,
                                      std::numeric_limits<double>::infinity());
    const double c = std::cosh(r0);
    const double c6 = c * c * c * c * c * c;
    return std::pow(std::tanh(r0), nu - 3.0) / c6 * m.m6_scaled;
}

double op1_stationary_density(double r) {
    if (!(r > 0.0 && r < std::numbers::pi / 2.0)) return 0.0;
    const double s = std::sin(2.0 * r);
    const double s2 = s * s;
    return s2 * s2 * s2 * s / (16.0 / 35.0);
}

double op1_stationary_cdf(double r) {
    if (r <= 0.0) return 0.0;
    if (r >= std::numbers::pi / 2.0) return 1.0;
    // int_0^r sin^7(2s) ds = (P(1) - P(cos 2r)) / 2 with P(u) = int (1 - u^2)^3 du
    auto P = [](double u) {
        const double u2 = u * u;
        return u * (1.0 - u2 + 0.6 * u2 * u2 - u2 * u2 * u2 / 7.0);
    };
    return (16.0 / 35.0 - P(std::cos(2.0 * r))) / (32.0 / 35.0);
}

double op1_stationary_mean_clock_rate() {
    using boost::math::quadrature::gauss_kronrod;
    const double half_pi = std::numbers::pi / 2.0;
    auto weight = [](double r) { return std::pow(std::sin(2.0 * r), 7); };
    auto weighted_rate = [](double r) { return 4.0 * std::pow(std::sin(2.0 * r), 5); };
    double e1 = 0.0, e2 = 0.0;
    const double num = gauss_kronrod<double, 61>::integrate(weighted_rate, 0.0, half_pi, 15,
                                                            1e-14, &e1);
    const double den =
        gauss_kronrod<double, 61>::integrate(weight, 0.0, half_pi, 15, 1e-14, &e2);
    return num / den;
}

}  // namespace octowind
