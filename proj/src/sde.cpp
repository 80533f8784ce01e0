#include "octowind/sde.hpp"

#include "octowind/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <ostream>

namespace octowind {

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::EulerMaruyama ? "euler" : "heun";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "euler" || name == "EulerMaruyama" || name == "euler-maruyama") {
        return Scheme::EulerMaruyama;
    }
    if (name == "heun" || name == "StratonovichHeun" || name == "stratonovich-heun") {
        return Scheme::StratonovichHeun;
    }
    throw DomainError("unknown scheme '" + std::string(name) + "' (expected euler or heun)");
}

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::TimeChange ? "time-change" : "line-integral";
}

double default_chart_r_max(SpaceKind kind) noexcept {
    switch (kind) {
        case SpaceKind::Projective: return 1.45;
        case SpaceKind::Hyperbolic: return 6.0;
        case SpaceKind::Flat: break;
    }
    return std::numeric_limits<double>::infinity();
}

std::size_t SimConfig::n_steps() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive and finite");
    if (!(t_end >= dt) || !std::isfinite(t_end)) {
        throw DomainError("t_end must be finite and at least dt");
    }
    const double q = t_end / dt;
    const double rq = std::round(q);
    if (std::abs(q - rq) <= 1e-9 * q) return static_cast<std::size_t>(rq);
    return static_cast<std::size_t>(std::ceil(q));
}

double SimConfig::effective_chart_r_max() const {
    return chart_r_max.value_or(default_chart_r_max(space.kind));
}

void SimConfig::validate_radial() const {
    (void)n_steps();
    if (!(r_min > 0.0)) throw DomainError("r_min must be positive");
    if (!(noise_scale >= 0.0)) throw DomainError("noise_scale must be non-negative");
    if (!(r0 > r_min) || !(r0 < space.radial_upper() - r_min)) {
        throw DomainError("r0 = " + std::to_string(r0) + " must lie strictly inside (r_min, " +
                          (space.kind == SpaceKind::Projective ? std::string("pi/2 - r_min")
                                                              : std::string("inf")) +
                          ")");
    }
}

void SimConfig::validate_coordinate() const {
    (void)n_steps();
    if (!(r_min > 0.0)) throw DomainError("r_min must be positive");
    if (!(noise_scale >= 0.0)) throw DomainError("noise_scale must be non-negative");
    if (!(chart_safety > 0.0)) throw DomainError("chart_safety must be positive");
    const double n = norm(w0);
    if (!std::isfinite(n)) throw DomainError("w0 must be finite");
    if (space.kind == SpaceKind::Hyperbolic && !(n < 1.0)) {
        throw DomainError("w0 must satisfy |w0| < 1 in the hyperbolic chart");
    }
    const double r = coord_radius(space, n);
    if (!(r > r_min)) throw DomainError("w0 must not be the origin");
    if (!(r < effective_chart_r_max())) {
        throw DomainError("w0 lies beyond the coordinate chart radius " +
                          std::to_string(effective_chart_r_max()));
    }
}

RadialTilt RadialTilt::hyperbolic_for_lambda(double lambda_norm) {
    const double nu = std::sqrt(9.0 + lambda_norm * lambda_norm);
    return {-3.0 + nu, -3.0 - nu};
}

// ---------------------------------------------------------------------------
// Radial stepping

RadialStepper::RadialStepper(ModelSpace space, RadialTilt tilt, Scheme scheme, double h,
                             double r_min)
    : space_(space),
      tilt_(tilt),
      tilted_(!tilt.is_zero()),
      scheme_(scheme),
      h_(h),
      r_min_(r_min),
      upper_(space.radial_upper()),
      layer_(5.0 * std::sqrt(h)) {
    if (tilted_) {
        if (space.kind == SpaceKind::Projective) {
            throw DomainError("radial tilt is defined for the flat and hyperbolic spaces only");
        }
        if (space.kind == SpaceKind::Flat && tilt.b != 0.0) {
            throw DomainError("flat tilt takes a single parameter mu");
        }
        if (3.5 + tilt.a <= 0.0) {
            throw DomainError("tilt makes the radial drift non-repelling at the origin");
        }
    }
}

double RadialStepper::drift(double r) const noexcept {
    switch (space_.kind) {
        case SpaceKind::Flat: return (3.5 + tilt_.a) / r;
        case SpaceKind::Projective: return 7.0 / std::tan(2.0 * r);
        case SpaceKind::Hyperbolic:
            if (!tilted_) return 7.0 / std::tanh(2.0 * r);
            {
                const double th = std::tanh(r);
                return (tilt_.a + 3.5) / th + (tilt_.b + 3.5) * th;
            }
    }
    return 0.0;
}

double RadialStepper::rate(double r) const noexcept {
    switch (space_.kind) {
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

double RadialStepper::implicit_step(double r, double dB) const {
    // Solve x = r + drift(x) h + dB.
    const double y = r + dB;
    if (space_.kind == SpaceKind::Flat) {
        const double c = 3.5 + tilt_.a;
        return 0.5 * (y + std::sqrt(y * y + 4.0 * c * h_));
    }
    auto F = [&](double x) { return x - drift(x) * h_ - y; };

    double lo = r;
    for (int k = 0; k < 200 && !(F(lo) < 0.0); ++k) lo *= 0.5;
    double hi = r;
    if (std::isfinite(upper_)) {
        double gap = upper_ - r;
        for (int k = 0; k < 200 && !(F(hi) > 0.0); ++k) {
            gap *= 0.5;
            hi = upper_ - gap;
        }
    } else {
        double span = std::abs(dB) + 1.0;
        for (int k = 0; k < 200 && !(F(hi) > 0.0); ++k) {
            hi = r + span;
            span *= 2.0;
        }
    }
    if (!(F(lo) < 0.0) || !(F(hi) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (F(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double RadialStepper::step(double r, double dB, double t_next) const {
    auto inside = [&](double x) { return x > 0.0 && x < upper_; };
    double next;
    const bool near_edge = r < layer_ || (upper_ - r) < layer_;
    if (near_edge) {
        next = implicit_step(r, dB);
    } else {
        const double b0 = drift(r);
        const double pred = r + b0 * h_ + dB;
        if (scheme_ == Scheme::EulerMaruyama) {
            next = pred;
        } else if (inside(pred)) {
            next = r + 0.5 * (b0 + drift(pred)) * h_ + dB;
        } else {
            next = pred;
        }
        if (!inside(next)) next = implicit_step(r, dB);
    }
    if (!(next > r_min_) || !(next < upper_ - r_min_)) {
        throw SimulationError("radial path left (r_min, upper - r_min) at t = " +
                                  std::to_string(t_next),
                              t_next);
    }
    return next;
}

namespace {

template <class NextIncrement, class Sink>
RadialEndpoint run_radial(const RadialStepper& stepper, double r0, std::size_t k0,
                          std::size_t n, double h, NextIncrement&& next_increment,
                          Sink&& sink) {
    double r = r0;
    double clock = 0.0;
    double rate0 = stepper.rate(r);
    double t = static_cast<double>(k0) * h;
    for (std::size_t k = k0; k < n; ++k) {
        t = static_cast<double>(k + 1) * h;
        const double r1 = stepper.step(r, next_increment(), t);
        const double rate1 = stepper.rate(r1);
        clock += 0.5 * (rate0 + rate1) * h;
        r = r1;
        rate0 = rate1;
        sink(k + 1, t, r, clock);
    }
    return {t, r, clock};
}

RadialPath record_radial(const SimConfig& cfg, RadialTilt tilt,
                         std::span<const double>* increments) {
    cfg.validate_radial();
    const std::size_t n = cfg.n_steps();
    const double h = cfg.step();
    if (increments && increments->size() != n) {
        throw DomainError("expected " + std::to_string(n) + " Brownian increments, got " +
                          std::to_string(increments->size()));
    }
    const RadialStepper stepper(cfg.space, tilt, cfg.scheme, h, cfg.r_min);
    const std::size_t stride = cfg.record_stride;

    RadialPath path;
    path.seed = cfg.seed;
    const std::size_t expected = stride == 0 ? 2 : n / stride + 2;
    path.times.reserve(expected);
    path.r.reserve(expected);
    path.clock.reserve(expected);
    path.times.push_back(0.0);
    path.r.push_back(cfg.r0);
    path.clock.push_back(0.0);

    auto sink = [&](std::size_t k, double t, double r, double a) {
        if ((stride != 0 && k % stride == 0) || k == n) {
            path.times.push_back(t);
            path.r.push_back(r);
            path.clock.push_back(a);
        }
    };
    const double scale = cfg.noise_scale;
    if (increments) {
        std::size_t i = 0;
        auto next = [&] { return scale * (*increments)[i++]; };
        run_radial(stepper, cfg.r0, 0, n, h, next, sink);
    } else {
        Rng rng(cfg.seed);
        const double sq = std::sqrt(h) * scale;
        auto next = [&] { return sq * rng.normal(); };
        run_radial(stepper, cfg.r0, 0, n, h, next, sink);
    }
    return path;
}

}  // namespace

RadialPath simulate_radial(const SimConfig& cfg) { return record_radial(cfg, {}, nullptr); }

RadialPath simulate_radial(const SimConfig& cfg, std::span<const double> increments) {
    return record_radial(cfg, {}, &increments);
}

RadialPath simulate_tilted_radial(const SimConfig& cfg, RadialTilt tilt) {
    return record_radial(cfg, tilt, nullptr);
}

RadialPath simulate_tilted_radial(const SimConfig& cfg, RadialTilt tilt,
                                  std::span<const double> increments) {
    return record_radial(cfg, tilt, &increments);
}

RadialEndpoint simulate_radial_endpoint(const SimConfig& cfg, RadialTilt tilt) {
    cfg.validate_radial();
    const std::size_t n = cfg.n_steps();
    const double h = cfg.step();
    const RadialStepper stepper(cfg.space, tilt, cfg.scheme, h, cfg.r_min);
    Rng rng(cfg.seed);
    const double sq = std::sqrt(h) * cfg.noise_scale;
    return run_radial(stepper, cfg.r0, 0, n, h, [&] { return sq * rng.normal(); },
                      [](std::size_t, double, double, double) {});
}

CoupledEndpoints simulate_radial_coupled(const SimConfig& cfg, RadialTilt tilt) {
    cfg.validate_radial();
    const std::size_t n = cfg.n_steps();
    if (n % 2 != 0) throw DomainError("coupled simulation needs an even number of steps");
    const double h = cfg.step();
    const RadialStepper fine(cfg.space, tilt, cfg.scheme, h, cfg.r_min);
    const RadialStepper coarse(cfg.space, tilt, cfg.scheme, 2.0 * h, cfg.r_min);
    Rng rng(cfg.seed);
    const double sq = std::sqrt(h) * cfg.noise_scale;

    double rf = cfg.r0, rc = cfg.r0;
    double af = 0.0, ac = 0.0;
    double ratef = fine.rate(rf), ratec = coarse.rate(rc);
    for (std::size_t k = 0; k < n; k += 2) {
        const double t1 = static_cast<double>(k + 1) * h;
        const double t2 = static_cast<double>(k + 2) * h;
        const double db1 = sq * rng.normal();
        const double db2 = sq * rng.normal();

        double r1 = fine.step(rf, db1, t1);
        double rate1 = fine.rate(r1);
        af += 0.5 * (ratef + rate1) * h;
        rf = r1;
        ratef = rate1;
        r1 = fine.step(rf, db2, t2);
        rate1 = fine.rate(r1);
        af += 0.5 * (ratef + rate1) * h;
        rf = r1;
        ratef = rate1;

        const double rc1 = coarse.step(rc, db1 + db2, t2);
        const double ratec1 = coarse.rate(rc1);
        ac += ratec1 * h + ratec * h;
        rc = rc1;
        ratec = ratec1;
    }
    const double t = static_cast<double>(n) * h;
    return {{t, rf, af}, {t, rc, ac}};
}

std::vector<double> brownian_increments(std::size_t n, double h, Rng& rng) {
    std::vector<double> out(n);
    const double sq = std::sqrt(h);
    for (auto& x : out) x = sq * rng.normal();
    return out;
}

std::vector<double> coarsen_increments(std::span<const double> increments) {
    if (increments.size() % 2 != 0) throw DomainError("coarsen_increments: odd length");
    std::vector<double> out(increments.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = increments[2 * i] + increments[2 * i + 1];
    }
    return out;
}

double accumulate_clock(const RadialPath& path, ModelSpace space) {
    if (path.times.size() != path.r.size() || path.times.empty()) {
        throw DomainError("accumulate_clock: malformed path");
    }
    double a = 0.0;
    double rate0 = clock_rate(space, path.r.front());
    for (std::size_t i = 1; i < path.r.size(); ++i) {
        const double rate1 = clock_rate(space, path.r[i]);
        a += 0.5 * (rate0 + rate1) * (path.times[i] - path.times[i - 1]);
        rate0 = rate1;
    }
    return a;
}

namespace {

ImVector7 gaussian7(Rng& rng, double scale) {
    ImVector7 z;
    for (auto& x : z.v) x = scale * rng.normal();
    return z;
}

}  // namespace

WindingSample sample_winding_timechange(const RadialEndpoint& end, Rng& rng) {
    WindingSample s;
    s.zeta = gaussian7(rng, std::sqrt(end.clock_end));
    s.t_end = end.t_end;
    s.clock_end = end.clock_end;
    s.provenance = Provenance::TimeChange;
    return s;
}

WindingSample sample_winding_timechange(const RadialPath& path, Rng& rng) {
    auto s = sample_winding_timechange(
        RadialEndpoint{path.t_end(), path.r_end(), path.clock_end()}, rng);
    s.seed = path.seed;
    if (path.times.size() > 1) s.dt = path.times[1] - path.times[0];
    return s;
}

WindingSample simulate_timechange_winding(const SimConfig& cfg) {
    cfg.validate_radial();
    const std::size_t n = cfg.n_steps();
    const double h = cfg.step();
    const RadialStepper stepper(cfg.space, {}, cfg.scheme, h, cfg.r_min);
    Rng rng(cfg.seed);
    const double sq = std::sqrt(h) * cfg.noise_scale;
    const auto end = run_radial(stepper, cfg.r0, 0, n, h, [&] { return sq * rng.normal(); },
                                [](std::size_t, double, double, double) {});
    auto s = sample_winding_timechange(end, rng);
    s.seed = cfg.seed;
    s.scheme = cfg.scheme;
    s.dt = h;
    return s;
}

std::vector<double> flat_log_grid(double t_end, double dt_uniform, double t_uniform,
                                  double ratio) {
    if (!(dt_uniform > 0.0) || !(t_uniform >= dt_uniform) || !(ratio > 1.0) ||
        !(t_end > 0.0) || !std::isfinite(t_end)) {
        throw DomainError("flat_log_grid: need t_end > 0, t_uniform >= dt_uniform > 0, ratio > 1");
    }
    std::vector<double> grid{0.0};
    const double t_lin = std::min(t_uniform, t_end);
    const auto n_lin = static_cast<std::size_t>(std::ceil(t_lin / dt_uniform - 1e-9));
    for (std::size_t k = 1; k <= n_lin; ++k) {
        grid.push_back(t_lin * static_cast<double>(k) / static_cast<double>(n_lin));
    }
    double t = t_lin;
    while (t < t_end) {
        t = t * ratio < t_end * (1.0 - 1e-12) ? t * ratio : t_end;
        grid.push_back(t);
    }
    return grid;
}

RadialEndpoint simulate_flat_exact(double rho, std::span<const double> grid, Rng& rng) {
    if (!(rho > 0.0)) throw DomainError("simulate_flat_exact: rho must be positive");
    if (grid.size() < 2 || grid.front() != 0.0) {
        throw DomainError("simulate_flat_exact: grid must start at 0 and have a step");
    }
    std::gamma_distribution<double> chi2_7(3.5, 2.0);
    double x = rho * rho;
    double clock = 0.0;
    double rate0 = 1.0 / x;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double h = grid[k] - grid[k - 1];
        if (!(h > 0.0)) throw DomainError("simulate_flat_exact: grid must increase");
        const double z = rng.normal() + std::sqrt(x / h);
        x = h * (z * z + chi2_7(rng.engine()));
        const double rate1 = 1.0 / x;
        clock += 0.5 * (rate0 + rate1) * h;
        rate0 = rate1;
    }
    return {grid.back(), std::sqrt(x), clock};
}

WindingSample simulate_flat_exact_winding(double rho, std::span<const double> grid,
                                          std::uint64_t seed) {
    Rng rng(seed);
    const auto end = simulate_flat_exact(rho, grid, rng);
    auto s = sample_winding_timechange(end, rng);
    s.seed = seed;
    s.dt = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
    return s;
}

// ---------------------------------------------------------------------------
// Coordinate simulation

namespace {

constexpr int kMaxBridgeDepth = 20;

class CoordinateIntegrator {
public:
    CoordinateIntegrator(const SimConfig& cfg, Rng& rng)
        : space_(cfg.space), scheme_(cfg.scheme), safety_(cfg.chart_safety), rng_(rng) {}

    // Advances w over one grid step with Brownian increment dW, adding the
    // midpoint winding increments to zeta.
    void advance(Octonion& w, const Octonion& dW, double h, ImVector7& zeta, double t_next,
                 int depth = 0) {
        Octonion next;
        if (try_step(w, dW, h, next)) {
            const Octonion dw = next - w;
            if (norm(dw) <= safety_ * norm(w)) {
                zeta += winding_form((w + next) * 0.5, dw);
                w = next;
                return;
            }
        }
        if (depth >= kMaxBridgeDepth) {
            throw SimulationError("coordinate step could not be refined inside the chart at t = " +
                                      std::to_string(t_next),
                                  t_next);
        }
        // Brownian bridge midpoint of the increment over [0, h].
        Octonion dW1;
        const double s = std::sqrt(0.25 * h);
        for (std::size_t i = 0; i < 8; ++i) dW1.c[i] = 0.5 * dW.c[i] + s * rng_.normal();
        const Octonion dW2 = dW - dW1;
        advance(w, dW1, 0.5 * h, zeta, t_next, depth + 1);
        advance(w, dW2, 0.5 * h, zeta, t_next, depth + 1);
    }

private:
    bool in_chart(const Octonion& w) const {
        const double n2 = norm_sq(w);
        if (!std::isfinite(n2) || !(n2 > 0.0)) return false;
        return space_.kind != SpaceKind::Hyperbolic || n2 < 1.0;
    }

    bool try_step(const Octonion& w, const Octonion& dW, double h, Octonion& out) const {
        if (scheme_ == Scheme::EulerMaruyama) {
            const auto c = coordinate_sde_coeffs(space_, w);
            out = w + c.drift * h + dW * c.diffusion;
            return in_chart(out);
        }
        const auto c0 = coordinate_sde_coeffs_stratonovich(space_, w);
        const Octonion pred = w + c0.drift * h + dW * c0.diffusion;
        if (!in_chart(pred)) return false;
        const auto c1 = coordinate_sde_coeffs_stratonovich(space_, pred);
        out = w + (c0.drift + c1.drift) * (0.5 * h) + dW * (0.5 * (c0.diffusion + c1.diffusion));
        return in_chart(out);
    }

    ModelSpace space_;
    Scheme scheme_;
    double safety_;
    Rng& rng_;
};

CoordinateResult run_coordinate(const SimConfig& cfg, bool record) {
    cfg.validate_coordinate();
    const std::size_t n = cfg.n_steps();
    const double h = cfg.step();
    const double r_max = cfg.effective_chart_r_max();
    const std::size_t stride = cfg.record_stride;
    const double sq = std::sqrt(h) * cfg.noise_scale;

    Rng rng(cfg.seed);
    CoordinateIntegrator integ(cfg, rng);
    const RadialStepper radial(cfg.space, {}, cfg.scheme, h, cfg.r_min);

    CoordinateResult res;
    auto& path = res.path;
    auto& sample = res.sample;
    sample.provenance = Provenance::LineIntegral;
    sample.seed = cfg.seed;
    sample.scheme = cfg.scheme;
    sample.dt = h;

    Octonion w = cfg.w0;
    ImVector7 zeta;
    double clock = 0.0;
    double rate0 = radial.rate(coord_radius(cfg.space, norm(w)));
    if (record) {
        path.times.push_back(0.0);
        path.w.push_back(w);
        path.zeta.push_back(zeta);
    }

    double t = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        t = static_cast<double>(k + 1) * h;
        Octonion dW;
        for (auto& x : dW.c) x = sq * rng.normal();
        integ.advance(w, dW, h, zeta, t);

        const double r = coord_radius(cfg.space, norm(w));
        if (!(r > cfg.r_min)) {
            throw SimulationError("coordinate path reached the origin at t = " +
                                      std::to_string(t),
                                  t);
        }
        const double rate1 = radial.rate(r);
        clock += 0.5 * (rate0 + rate1) * h;
        rate0 = rate1;
        if (record && ((stride != 0 && (k + 1) % stride == 0) || k + 1 == n)) {
            path.times.push_back(t);
            path.w.push_back(w);
            path.zeta.push_back(zeta);
        }
        if (r > r_max && k + 1 < n) {
            // Hand over to the skew-product form for the rest of the horizon.
            const auto tail = run_radial(radial, r, k + 1, n, h,
                                         [&] { return sq * rng.normal(); },
                                         [](std::size_t, double, double, double) {});
            clock += tail.clock_end;
            zeta += gaussian7(rng, std::sqrt(tail.clock_end));
            sample.switched_at = t;
            t = tail.t_end;
            break;
        }
    }
    sample.zeta = zeta;
    sample.t_end = t;
    sample.clock_end = clock;
    return res;
}

}  // namespace

CoordinateResult simulate_coordinate(const SimConfig& cfg) { return run_coordinate(cfg, true); }

WindingSample simulate_coordinate_winding(const SimConfig& cfg) {
    return run_coordinate(cfg, false).sample;
}

void write_radial_csv(std::ostream& os, const RadialPath& path, std::string_view comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << "time,r,clock\n" << std::setprecision(17);
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        os << path.times[i] << ',' << path.r[i] << ',' << path.clock[i] << '\n';
    }
}

void write_coordinate_csv(std::ostream& os, const CoordinatePath& path,
                          std::string_view comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << "time";
    for (int i = 0; i < 8; ++i) os << ",c" << i;
    for (int i = 1; i <= 7; ++i) os << ",zeta" << i;
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        os << path.times[k];
        for (double x : path.w[k].c) os << ',' << x;
        for (double x : path.zeta[k].v) os << ',' << x;
        os << '\n';
    }
}

}  // namespace octowind
