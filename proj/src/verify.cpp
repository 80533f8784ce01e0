#include "octowind/verify.hpp"

#include "octowind/geometry.hpp"
#include "octowind/octonion.hpp"
#include "octowind/rng.hpp"
#include "octowind/special_functions.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace octowind {

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

Octonion random_octonion(Rng& rng) {
    Octonion x;
    for (auto& c : x.c) c = rng.normal();
    return x;
}

double max_abs(const Octonion& x) {
    double m = 0.0;
    for (double c : x.c) m = std::max(m, std::abs(c));
    return m;
}

double max_abs(const ImVector7& v) {
    double m = 0.0;
    for (double c : v.v) m = std::max(m, std::abs(c));
    return m;
}

CheckResult check(std::string name, double observed, double tol) {
    return {std::move(name), observed, tol, observed < tol};
}

}  // namespace

SuiteReport run_algebra_suite(std::uint64_t seed, std::size_t n_pairs, std::size_t n_eta) {
    SuiteReport rep{"algebra", {}};
    Rng rng(seed);

    double norm_err = 0.0, alt_left = 0.0, alt_right = 0.0, inv_err = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const Octonion x = random_octonion(rng);
        const Octonion y = random_octonion(rng);
        const double nx = norm_sq(x), ny = norm_sq(y);
        norm_err = std::max(norm_err, std::abs(norm_sq(x * y) - nx * ny) / (nx * ny));
        const double scale = nx * std::sqrt(ny);
        alt_left = std::max(alt_left, max_abs(x * (x * y) - (x * x) * y) / scale);
        alt_right = std::max(alt_right, max_abs((y * x) * x - y * (x * x)) / scale);
        inv_err = std::max({inv_err, max_abs(x * inv(x) - Octonion::basis(0)),
                            max_abs(inv(x) * x - Octonion::basis(0))});
    }
    rep.checks.push_back(check("norm_multiplicativity", norm_err, 1e-12));
    rep.checks.push_back(check("left_alternative", alt_left, 1e-12));
    rep.checks.push_back(check("right_alternative", alt_right, 1e-12));
    rep.checks.push_back(check("inverse", inv_err, 1e-12));

    double eta_err = 0.0, self_err = 0.0;
    for (std::size_t i = 0; i < n_eta; ++i) {
        const Octonion x = random_octonion(rng);
        const Octonion v = random_octonion(rng);
        const ImVector7 a = winding_form(x, v);
        const ImVector7 b = winding_form_coordinates(x, v);
        eta_err = std::max(eta_err, max_abs(a - b) / std::max(1.0, max_abs(a)));
        self_err = std::max(self_err, max_abs(winding_form(x, x)));
    }
    rep.checks.push_back(check("winding_coordinate_formulas", eta_err, 1e-12));
    // exact zero: the imaginary part of conj(x) x cancels term by term
    rep.checks.push_back({"winding_form_self", self_err, 0.0, self_err == 0.0});

    const Octonion e1 = Octonion::basis(1), e2 = Octonion::basis(2), e4 = Octonion::basis(4);
    const double assoc_gap = max_abs(e1 * (e2 * e4) - (e1 * e2) * e4);
    rep.checks.push_back({"non_associative_witness", assoc_gap, 0.0, assoc_gap > 0.0});
    return rep;
}

SuiteReport run_geometry_suite(std::uint64_t seed) {
    SuiteReport rep{"geometry", {}};
    Rng rng(seed);

    // Ito generator of the chart SDE on g(r(|w|)) with g = cos(r) + r^2, by
    // central differences in R^8, against (g'' + 2 b g') / 2.
    auto g = [](double r) { return std::cos(r) + r * r; };
    auto dg = [](double r) { return -std::sin(r) + 2.0 * r; };
    auto d2g = [](double r) { return -std::cos(r) + 2.0; };
    double gen_err = 0.0;
    for (SpaceKind kind : {SpaceKind::Flat, SpaceKind::Projective, SpaceKind::Hyperbolic}) {
        const ModelSpace space{kind};
        for (double r : {0.3, 0.7, 1.1}) {
            Octonion u = random_octonion(rng);
            u = u * (1.0 / norm(u));
            const Octonion w = u * chart_norm(space, r);
            auto f = [&](const Octonion& p) { return g(coord_radius(space, norm(p))); };
            const auto coeffs = coordinate_sde_coeffs(space, w);
            const double h = 1e-4;
            double lap = 0.0, grad_dot = 0.0;
            for (int j = 0; j < 8; ++j) {
                const Octonion e = Octonion::basis(j) * h;
                const double fp = f(w + e), fm = f(w - e), f0 = f(w);
                lap += (fp - 2.0 * f0 + fm) / (h * h);
                grad_dot += coeffs.drift.c[static_cast<std::size_t>(j)] * (fp - fm) / (2.0 * h);
            }
            const double lhs = 0.5 * coeffs.diffusion * coeffs.diffusion * lap + grad_dot;
            const double rhs = 0.5 * d2g(r) + radial_drift(space, r) * dg(r);
            gen_err = std::max(gen_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    rep.checks.push_back(check("chart_generator_matches_radial", gen_err, 1e-5));

    double min_rate = std::numeric_limits<double>::infinity();
    for (SpaceKind kind : {SpaceKind::Flat, SpaceKind::Projective, SpaceKind::Hyperbolic}) {
        const ModelSpace space{kind};
        const double upper = kind == SpaceKind::Projective ? std::numbers::pi / 2.0 : 10.0;
        for (int k = 1; k < 100; ++k) {
            min_rate = std::min(min_rate, clock_rate(space, upper * k / 100.0));
        }
    }
    rep.checks.push_back({"clock_positive", min_rate, 0.0, min_rate > 0.0});

    // cot -> coth and sin -> sinh under r -> i r, evaluated in complex arithmetic.
    double dual_err = 0.0, ident_err = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double r = 0.07 * k;
        const std::complex<double> ir(0.0, r);
        const std::complex<double> cot2 = std::cos(2.0 * ir) / std::sin(2.0 * ir);
        const std::complex<double> rate = 4.0 / (std::sin(2.0 * ir) * std::sin(2.0 * ir));
        const ModelSpace hyp{SpaceKind::Hyperbolic};
        dual_err = std::max({dual_err,
                             std::abs(radial_drift(hyp, r) - (std::complex<double>(0, 7) * cot2).real()),
                             std::abs(clock_rate(hyp, r) + rate.real())});
        const double th = std::tanh(r);
        ident_err = std::max(ident_err, std::abs(clock_rate(hyp, r) - (1.0 / (th * th) + th * th - 2.0)) /
                                            clock_rate(hyp, r));
    }
    rep.checks.push_back(check("projective_hyperbolic_duality", dual_err, 1e-10));
    rep.checks.push_back(check("sinh_clock_identity", ident_err, 1e-12));
    return rep;
}

SuiteReport run_special_suite() {
    SuiteReport rep{"special", {}};
    const double half = std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0);
    rep.checks.push_back(
        check("bessel_half_integer", std::abs(bessel_i(0.5, 1.0) - half) / half, 1e-13));
    rep.checks.push_back(
        check("flat_laplace_normalisation", std::abs(flat_laplace(1.0, 10.0, 0.0) - 1.0), 1e-8));

    double forms = 0.0, cascade = 0.0;
    for (double l : {0.5, 1.0, 2.0}) {
        for (double r0 : {0.5, 1.0, 2.0}) {
            const double a = oh1_limit_charfn(l, r0);
            forms = std::max(forms, std::abs(a - oh1_limit_charfn_expanded(l, r0)));
            cascade = std::max(cascade, std::abs(a - oh1_limit_from_cascade(l, r0)) / a);
        }
    }
    rep.checks.push_back(check("hyperbolic_limit_two_forms", forms, 1e-12));
    rep.checks.push_back(check("hyperbolic_limit_from_cascade", cascade, 1e-10));
    rep.checks.push_back(check("hyperbolic_limit_at_zero",
                               std::abs(oh1_limit_from_cascade(0.0, 1.0) - 1.0), 1e-12));
    rep.checks.push_back(check("stationary_mean_clock_rate",
                               std::abs(op1_stationary_mean_clock_rate() - 14.0 / 3.0), 1e-10));
    rep.checks.push_back(check("stationary_cdf_midpoint",
                               std::abs(op1_stationary_cdf(std::numbers::pi / 4.0) - 0.5), 1e-14));
    return rep;
}

std::string to_json(const std::vector<SuiteReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"observed", c.observed},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
        }
        out.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}});
        all = all && r.pass();
    }
    return nlohmann::json{{"pass", all}, {"suites", out}}.dump(2);
}

}  // namespace octowind
