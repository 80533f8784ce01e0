#include "octowind/experiment.hpp"

#include "octowind/errors.hpp"
#include "octowind/monte_carlo.hpp"
#include "octowind/parallel.hpp"
#include "octowind/special_functions.hpp"
#include "octowind/stats.hpp"
#include "octowind/verify.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <ostream>

namespace octowind {

namespace {

void header_comment(std::ostream& os, const ExperimentConfig& cfg) {
    os << "# config_hash=" << config_hash_hex(cfg) << '\n';
}

int run_simulate(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log) {
    const SimConfig base = cfg.sim_config(cfg.t.front());
    const unsigned workers = resolve_workers(cfg.threads);
    const std::string comment = "config_hash=" + config_hash_hex(cfg);

    if (cfg.paths == 1) {
        if (cfg.mode == SimMode::Radial) {
            const auto path = simulate_radial(base);
            write_radial_csv(data, path, comment);
            log << "simulate " << to_string(cfg.space) << " radial: r(t) = " << path.r_end()
                << ", A_t = " << path.clock_end() << '\n';
        } else {
            const auto res = simulate_coordinate(base);
            write_coordinate_csv(data, res.path, comment);
            log << "simulate " << to_string(cfg.space) << " coordinate: |zeta(t)| = "
                << res.sample.zeta.norm() << ", A_t = " << res.sample.clock_end.value_or(0.0)
                << '\n';
        }
        return 0;
    }

    const auto samples = cfg.mode == SimMode::Radial
                             ? timechange_batch(base, cfg.paths, workers)
                             : line_integral_batch(base, cfg.paths, workers);
    header_comment(data, cfg);
    data << "path,seed,t_end,clock_end";
    for (int i = 1; i <= 7; ++i) data << ",zeta" << i;
    data << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        data << i << ',' << s.seed << ',' << s.t_end << ',' << s.clock_end.value_or(0.0);
        for (double z : s.zeta.v) data << ',' << z;
        data << '\n';
    }
    const auto a = clocks(samples);
    const auto m = mean_estimate(a);
    log << "simulate " << to_string(cfg.space) << ' ' << to_string(cfg.mode) << ": "
        << cfg.paths << " paths, mean A_t = " << m.value << " +- " << m.std_error << '\n';
    return 0;
}

int run_charfn(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log) {
    const unsigned workers = resolve_workers(cfg.threads);
    const double r0 = cfg.effective_r0();
    header_comment(data, cfg);
    data << "space,lambda_norm,r0,t,n_paths,mc_value,mc_se,closed_form\n" << std::setprecision(17);
    for (double t : cfg.t) {
        const auto samples = timechange_batch(cfg.sim_config(t), cfg.paths, workers);
        for (double l : cfg.lambda) {
            double closed = 0.0;
            double freq = l;
            switch (cfg.space) {
                case SpaceKind::Flat: closed = flat_laplace(r0, t, l); break;
                case SpaceKind::Projective:
                    // zeta(t) / sqrt(t) against its Gaussian limit
                    freq = l / std::sqrt(t);
                    closed = op1_limit_charfn(l);
                    break;
                case SpaceKind::Hyperbolic: closed = oh1_limit_charfn(l, r0); break;
            }
            const auto est = mc_charfn(samples, ImVector7::unit(1) * freq);
            data << to_string(cfg.space) << ',' << l << ',' << r0 << ',' << t << ','
                 << cfg.paths << ',' << est.value << ',' << est.std_error << ',' << closed
                 << '\n';
            log << "charfn " << to_string(cfg.space) << " |lambda|=" << l << " t=" << t
                << ": mc " << est.value << " +- " << est.std_error << ", closed form " << closed
                << '\n';
        }
    }
    return 0;
}

int run_table(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log) {
    const double r0 = cfg.effective_r0();
    header_comment(data, cfg);
    data << "space,lambda_norm,r0,t,closed_form,limit\n" << std::setprecision(17);
    for (double l : cfg.lambda) {
        if (cfg.space == SpaceKind::Flat) {
            const double limit = flat_limit_charfn(l);
            for (double t : cfg.t) {
                const double v = flat_laplace_log_scaled(r0, t, l);
                data << "flat," << l << ',' << r0 << ',' << t << ',' << v << ',' << limit << '\n';
            }
            log << "table flat |lambda|=" << l << ": " << cfg.t.size()
                << " horizons, limit " << limit << '\n';
        } else {
            const double v = cfg.space == SpaceKind::Projective ? op1_limit_charfn(l)
                                                                : oh1_limit_charfn(l, r0);
            data << to_string(cfg.space) << ',' << l << ',' << r0 << ",inf," << v << ',' << v
                 << '\n';
            log << "table " << to_string(cfg.space) << " |lambda|=" << l << ": limit " << v
                << '\n';
        }
    }
    return 0;
}

int run_verify(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log) {
    std::vector<SuiteReport> reports;
    const bool all = cfg.suite == "all";
    if (all || cfg.suite == "algebra") reports.push_back(run_algebra_suite(cfg.seed));
    if (all || cfg.suite == "geometry") reports.push_back(run_geometry_suite(cfg.seed));
    if (all || cfg.suite == "special") reports.push_back(run_special_suite());
    data << to_json(reports) << '\n';
    bool ok = true;
    for (const auto& r : reports) {
        std::size_t passed = 0;
        for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
        log << "verify " << r.suite << ": " << passed << '/' << r.checks.size() << " checks "
            << (r.pass() ? "passed" : "FAILED") << '\n';
        for (const auto& c : r.checks) {
            if (!c.pass) log << "  " << c.name << ": observed " << c.observed << '\n';
        }
        ok = ok && r.pass();
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& data, std::ostream& log) {
    try {
        validate(cfg);
        switch (cfg.command) {
            case Command::Simulate: return run_simulate(cfg, data, log);
            case Command::Charfn: return run_charfn(cfg, data, log);
            case Command::Table: return run_table(cfg, data, log);
            case Command::Verify: return run_verify(cfg, data, log);
        }
    } catch (const ConfigError& e) {
        for (const auto& v : e.violations()) log << "error: " << v << '\n';
    } catch (const SimulationError& e) {
        log << "simulation error: " << e.what() << " (exit time " << e.exit_time() << ")\n";
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
    }
    return 2;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.output.empty()) return run_experiment(cfg, std::cout, log);
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        log << "error: cannot open output file '" << cfg.output << "'\n";
        return 2;
    }
    return run_experiment(cfg, out, log);
}

}  // namespace octowind
