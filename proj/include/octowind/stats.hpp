#pragma once

#include "octowind/geometry.hpp"
#include "octowind/octonion.hpp"
#include "octowind/sde.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace octowind {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Sample mean with its normal-approximation standard error.
McEstimate mean_estimate(std::span<const double> xs);

enum class CharFnEstimator {
    Auto,         // Conditional when every sample carries a clock, Direct otherwise
    Conditional,  // exp(-|lambda|^2 A_t / 2)
    Direct,       // cos(lambda . zeta)
};

/// Monte Carlo estimate of E[exp(i lambda . zeta)] (real, by symmetry).
/// Throws DomainError on empty input or a Conditional request without clocks.
McEstimate mc_charfn(std::span<const WindingSample> samples, const ImVector7& lambda,
                     CharFnEstimator estimator = CharFnEstimator::Auto);

using Matrix7 = std::array<std::array<double, 7>, 7>;

Matrix7 identity7(double scale = 1.0);

std::vector<ImVector7> zetas(std::span<const WindingSample> samples, double scale = 1.0);

/// Unbiased sample covariance of the 7 winding coordinates. Needs n >= 2.
Matrix7 empirical_cov(std::span<const ImVector7> xs);
Matrix7 empirical_cov(std::span<const WindingSample> samples);

double standard_normal_cdf(double x) noexcept;

/// sup_x |F_n(x) - F(x)| for the empirical CDF of xs against cdf.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf&& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// CDF of the scale mixture of centred normals with variances A_i (uniform
/// weights): F(x) = mean_i Phi(x / sqrt(A_i)). This is the exact law of one
/// winding coordinate given the sampled clocks. Tabulated on a fine grid.
class GaussianMixtureCdf {
public:
    explicit GaussianMixtureCdf(std::span<const double> variances, std::size_t grid = 8001);
    double operator()(double x) const;

private:
    double lo_ = 0.0;
    double step_ = 0.0;
    std::vector<double> table_;
};

/// CDF of |zeta| under the same mixture: mean_i P(chi^2_7 <= x^2 / A_i).
class ChiMixtureCdf {
public:
    explicit ChiMixtureCdf(std::span<const double> variances, std::size_t grid = 8001);
    double operator()(double x) const;

private:
    double step_ = 0.0;
    std::vector<double> table_;
};

struct GaussTestOptions {
    double ks_threshold = 0.02;
    double diag_rel_tol = 0.05;
    double offdiag_abs_tol = 0.1;
};

struct GaussTestReport {
    std::array<double, 7> ks_per_marginal{};
    Matrix7 cov_matrix{};
    double max_offdiag = 0.0;
    double max_diag_rel_dev = 0.0;
    /// Frobenius norm of cov_matrix - target_cov.
    double frobenius_dev = 0.0;
    std::size_t n_samples = 0;
    GaussTestOptions options;
    bool pass = false;
};

/// KS of each marginal, standardised by the target variances, against the
/// standard normal CDF, plus the covariance deviation. Needs n >= 100.
GaussTestReport gaussian_test(std::span<const ImVector7> xs, const Matrix7& target_cov,
                              GaussTestOptions options = {});

std::string report_json(const GaussTestReport& report);
std::string report_text(const GaussTestReport& report);

/// KS distance between radial samples and the stationary law sin^7(2r) on
/// (0, pi/2). Only the projective radial process is positive recurrent.
double stationary_density_check(std::span<const double> radial_samples, ModelSpace space);

// ---------------------------------------------------------------------------

template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf&& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace octowind
