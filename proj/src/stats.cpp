#include "octowind/stats.hpp"

#include "octowind/errors.hpp"
#include "octowind/special_functions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace octowind {

McEstimate mean_estimate(std::span<const double> xs) {
    if (xs.empty()) throw DomainError("mean_estimate: no samples");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double se = xs.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, se, xs.size()};
}

McEstimate mc_charfn(std::span<const WindingSample> samples, const ImVector7& lambda,
                     CharFnEstimator estimator) {
    if (samples.empty()) throw DomainError("mc_charfn: no samples");
    const bool clocks = std::all_of(samples.begin(), samples.end(),
                                    [](const WindingSample& s) { return s.clock_end.has_value(); });
    if (estimator == CharFnEstimator::Auto) {
        estimator = clocks ? CharFnEstimator::Conditional : CharFnEstimator::Direct;
    }
    if (estimator == CharFnEstimator::Conditional && !clocks) {
        throw DomainError("mc_charfn: conditional estimator needs clock values on every sample");
    }
    std::vector<double> values(samples.size());
    const double half_l2 = 0.5 * lambda.norm_sq();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        values[i] = estimator == CharFnEstimator::Conditional
                        ? std::exp(-half_l2 * *samples[i].clock_end)
                        : std::cos(lambda.dot(samples[i].zeta));
    }
    return mean_estimate(values);
}

Matrix7 identity7(double scale) {
    Matrix7 m{};
    for (std::size_t i = 0; i < 7; ++i) m[i][i] = scale;
    return m;
}

std::vector<ImVector7> zetas(std::span<const WindingSample> samples, double scale) {
    std::vector<ImVector7> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.zeta * scale);
    return out;
}

Matrix7 empirical_cov(std::span<const ImVector7> xs) {
    if (xs.size() < 2) throw DomainError("empirical_cov: needs at least two samples");
    const double n = static_cast<double>(xs.size());
    ImVector7 mean;
    for (const auto& x : xs) mean += x;
    mean *= 1.0 / n;
    Matrix7 c{};
    for (const auto& x : xs) {
        const ImVector7 d = x - mean;
        for (std::size_t i = 0; i < 7; ++i) {
            for (std::size_t j = i; j < 7; ++j) c[i][j] += d[i] * d[j];
        }
    }
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = i; j < 7; ++j) {
            c[i][j] /= (n - 1.0);
            c[j][i] = c[i][j];
        }
    }
    return c;
}

Matrix7 empirical_cov(std::span<const WindingSample> samples) {
    const auto xs = zetas(samples);
    return empirical_cov(std::span<const ImVector7>(xs));
}

double standard_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

namespace {

double max_variance(std::span<const double> variances) {
    if (variances.empty()) throw DomainError("mixture CDF: no variances");
    double m = 0.0;
    for (double v : variances) {
        if (!(v >= 0.0)) throw DomainError("mixture CDF: negative variance");
        m = std::max(m, v);
    }
    if (!(m > 0.0)) throw DomainError("mixture CDF: all variances vanish");
    return m;
}

double interpolate(const std::vector<double>& table, double pos) {
    if (pos <= 0.0) return table.front();
    const double last = static_cast<double>(table.size() - 1);
    if (pos >= last) return table.back();
    const auto k = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(k);
    return table[k] + f * (table[k + 1] - table[k]);
}

}  // namespace

GaussianMixtureCdf::GaussianMixtureCdf(std::span<const double> variances, std::size_t grid) {
    const double hi = 10.0 * std::sqrt(max_variance(variances));
    if (grid < 3) grid = 3;
    if (grid % 2 == 0) ++grid;
    lo_ = -hi;
    step_ = 2.0 * hi / static_cast<double>(grid - 1);
    table_.assign(grid, 0.0);
    std::vector<double> inv_sd;
    std::size_t atoms = 0;  // zero-variance components: a point mass at 0
    for (double v : variances) {
        if (v > 0.0) {
            inv_sd.push_back(1.0 / std::sqrt(v));
        } else {
            ++atoms;
        }
    }
    const double n = static_cast<double>(variances.size());
    const std::size_t mid = grid / 2;
    for (std::size_t k = mid; k < grid; ++k) {
        const double x = lo_ + static_cast<double>(k) * step_;
        double s = 0.0;
        for (double w : inv_sd) s += standard_normal_cdf(x * w);
        // F(0) counts half of the atom, as interpolation across 0 would
        s += static_cast<double>(atoms) * (k == mid ? 0.5 : 1.0);
        table_[k] = s / n;
        table_[grid - 1 - k] = 1.0 - table_[k];
    }
}

double GaussianMixtureCdf::operator()(double x) const {
    return interpolate(table_, (x - lo_) / step_);
}

ChiMixtureCdf::ChiMixtureCdf(std::span<const double> variances, std::size_t grid) {
    const double hi = 12.0 * std::sqrt(max_variance(variances));
    if (grid < 2) grid = 2;
    step_ = hi / static_cast<double>(grid - 1);
    table_.assign(grid, 0.0);
    const double n = static_cast<double>(variances.size());
    for (std::size_t k = 0; k < grid; ++k) {
        const double x = static_cast<double>(k) * step_;
        double s = 0.0;
        for (double v : variances) {
            if (v > 0.0) {
                s += boost::math::gamma_p(3.5, 0.5 * x * x / v);
            } else {
                s += 1.0;
            }
        }
        table_[k] = s / n;
    }
}

double ChiMixtureCdf::operator()(double x) const {
    if (x < 0.0) return 0.0;
    return interpolate(table_, x / step_);
}

GaussTestReport gaussian_test(std::span<const ImVector7> xs, const Matrix7& target_cov,
                              GaussTestOptions options) {
    if (xs.size() < 100) throw DomainError("gaussian_test: needs at least 100 samples");
    for (std::size_t i = 0; i < 7; ++i) {
        if (!(target_cov[i][i] > 0.0)) {
            throw DomainError("gaussian_test: target covariance is degenerate");
        }
    }
    GaussTestReport rep;
    rep.options = options;
    rep.n_samples = xs.size();
    rep.cov_matrix = empirical_cov(xs);
    for (std::size_t i = 0; i < 7; ++i) {
        if (!(rep.cov_matrix[i][i] > 0.0)) {
            throw DomainError("gaussian_test: sample covariance is degenerate");
        }
    }

    double frob = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            const double d = rep.cov_matrix[i][j] - target_cov[i][j];
            frob += d * d;
            if (i == j) {
                rep.max_diag_rel_dev = std::max(rep.max_diag_rel_dev, std::abs(d) / target_cov[i][i]);
            } else {
                rep.max_offdiag = std::max(rep.max_offdiag, std::abs(d));
            }
        }
    }
    rep.frobenius_dev = std::sqrt(frob);

    std::vector<double> marginal(xs.size());
    bool ks_ok = true;
    for (std::size_t i = 0; i < 7; ++i) {
        const double inv_sd = 1.0 / std::sqrt(target_cov[i][i]);
        for (std::size_t k = 0; k < xs.size(); ++k) marginal[k] = xs[k][i] * inv_sd;
        rep.ks_per_marginal[i] = ks_statistic(marginal, standard_normal_cdf);
        ks_ok = ks_ok && rep.ks_per_marginal[i] < options.ks_threshold;
    }
    rep.pass = ks_ok && rep.max_diag_rel_dev <= options.diag_rel_tol &&
               rep.max_offdiag <= options.offdiag_abs_tol;
    return rep;
}

std::string report_json(const GaussTestReport& r) {
    nlohmann::json j;
    j["ks_per_marginal"] = r.ks_per_marginal;
    j["cov_matrix"] = r.cov_matrix;
    j["max_offdiag"] = r.max_offdiag;
    j["max_diag_rel_dev"] = r.max_diag_rel_dev;
    j["frobenius_dev"] = r.frobenius_dev;
    j["n_samples"] = r.n_samples;
    j["thresholds"] = {{"ks", r.options.ks_threshold},
                       {"diag_rel", r.options.diag_rel_tol},
                       {"offdiag_abs", r.options.offdiag_abs_tol}};
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string report_text(const GaussTestReport& r) {
    std::ostringstream os;
    os << "gaussian test over " << r.n_samples << " samples: " << (r.pass ? "PASS" : "FAIL")
       << '\n';
    os << "  KS per marginal (threshold " << r.options.ks_threshold << "):";
    for (double k : r.ks_per_marginal) os << ' ' << k;
    os << "\n  max |diag dev| / target = " << r.max_diag_rel_dev << " (tol "
       << r.options.diag_rel_tol << ")\n";
    os << "  max |offdiag| = " << r.max_offdiag << " (tol " << r.options.offdiag_abs_tol << ")\n";
    return os.str();
}

double stationary_density_check(std::span<const double> radial_samples, ModelSpace space) {
    if (space.kind != SpaceKind::Projective) {
        throw DomainError("stationary_density_check: only the projective radial process is "
                          "positive recurrent");
    }
    if (radial_samples.empty()) throw DomainError("stationary_density_check: no samples");
    return ks_statistic(std::vector<double>(radial_samples.begin(), radial_samples.end()),
                        op1_stationary_cdf);
}

}  // namespace octowind
