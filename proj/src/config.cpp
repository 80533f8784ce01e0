#include "octowind/config.hpp"

#include "octowind/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace octowind {

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Charfn: return "charfn";
        case Command::Verify: return "verify";
        case Command::Table: return "table";
    }
    return "?";
}

std::string_view to_string(SimMode m) noexcept {
    return m == SimMode::Radial ? "radial" : "coordinate";
}

double ExperimentConfig::effective_r0() const {
    if (r0) return *r0;
    return space == SpaceKind::Projective ? std::numbers::pi / 4.0 : 1.0;
}

Octonion ExperimentConfig::effective_w0() const {
    if (w0) return *w0;
    return Octonion::basis(0) * chart_norm(ModelSpace{space}, effective_r0());
}

SimConfig ExperimentConfig::sim_config(double t_end) const {
    SimConfig c;
    c.space = ModelSpace{space};
    c.t_end = t_end;
    c.dt = dt;
    c.r0 = effective_r0();
    c.w0 = effective_w0();
    c.scheme = scheme;
    c.seed = seed;
    c.record_stride = stride;
    return c;
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::vector<double>> parse_list(std::string_view s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
        const auto v = parse_double(item);
        if (!v) return std::nullopt;
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
void set_or_report(std::optional<T> v, T& field, std::string_view key, std::string_view value,
                   std::string_view expected, std::vector<std::string>& errors) {
    if (v) {
        field = *v;
    } else {
        errors.push_back(std::string(key) + ": cannot parse '" + std::string(value) + "' as " +
                         std::string(expected));
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration: " + join(violations)),
      violations_(std::move(violations)) {}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   std::vector<std::string>& errors) {
    key = trim(key);
    value = trim(value);
    const std::string k(key);
    const std::string v(value);
    try {
        if (k == "command") {
            if (v == "simulate") cfg.command = Command::Simulate;
            else if (v == "charfn") cfg.command = Command::Charfn;
            else if (v == "verify") cfg.command = Command::Verify;
            else if (v == "table") cfg.command = Command::Table;
            else errors.push_back("command: unknown command '" + v + "'");
        } else if (k == "space") {
            cfg.space = parse_space(v);
        } else if (k == "t" || k == "t_end") {
            set_or_report(parse_list(v), cfg.t, k, v, "a list of numbers", errors);
        } else if (k == "dt") {
            set_or_report(parse_double(v), cfg.dt, k, v, "a number", errors);
        } else if (k == "paths" || k == "n_paths") {
            auto n = parse_uint(v);
            std::optional<std::size_t> m;
            if (n) m = static_cast<std::size_t>(*n);
            set_or_report(m, cfg.paths, k, v, "a non-negative integer", errors);
        } else if (k == "r0" || k == "rho") {
            double r = 0.0;
            auto p = parse_double(v);
            set_or_report(p, r, k, v, "a number", errors);
            if (p) cfg.r0 = r;
        } else if (k == "w0") {
            auto list = parse_list(v);
            if (!list || list->size() != 8) {
                errors.push_back("w0: expected 8 comma-separated components, got '" + v + "'");
            } else {
                Octonion w;
                std::copy(list->begin(), list->end(), w.c.begin());
                cfg.w0 = w;
            }
        } else if (k == "lambda" || k == "lambda_norm") {
            set_or_report(parse_list(v), cfg.lambda, k, v, "a list of numbers", errors);
        } else if (k == "seed") {
            set_or_report(parse_uint(v), cfg.seed, k, v, "a 64-bit unsigned integer", errors);
        } else if (k == "output") {
            cfg.output = v;
        } else if (k == "scheme") {
            cfg.scheme = parse_scheme(v);
        } else if (k == "threads") {
            auto n = parse_uint(v);
            if (n && *n > 0 && *n < 4096) {
                cfg.threads = static_cast<unsigned>(*n);
            } else {
                errors.push_back("threads: expected an integer in [1, 4095], got '" + v + "'");
            }
        } else if (k == "suite") {
            if (v == "algebra" || v == "geometry" || v == "special" || v == "all") {
                cfg.suite = v;
            } else {
                errors.push_back("suite: unknown suite '" + v +
                                 "' (expected algebra, geometry, special or all)");
            }
        } else if (k == "mode") {
            if (v == "radial") cfg.mode = SimMode::Radial;
            else if (v == "coordinate") cfg.mode = SimMode::Coordinate;
            else errors.push_back("mode: unknown mode '" + v + "' (expected radial or coordinate)");
        } else if (k == "stride") {
            auto n = parse_uint(v);
            std::optional<std::size_t> m;
            if (n) m = static_cast<std::size_t>(*n);
            set_or_report(m, cfg.stride, k, v, "a non-negative integer", errors);
        } else {
            errors.push_back("unknown key '" + k + "'");
        }
    } catch (const DomainError& e) {
        errors.push_back(k + ": " + e.what());
    }
}

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

Entries parse_key_value(std::string_view text, std::vector<std::string>& errors) {
    Entries out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
        pos = nl == text.npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == line.npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        out.emplace_back(std::string(trim(line.substr(0, eq))),
                         std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

std::string json_scalar(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    if (j.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        return buf;
    }
    return j.dump();
}

Entries parse_json(std::string_view text, std::vector<std::string>& errors) {
    Entries out;
    std::vector<std::string> keys;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(
            text.begin(), text.end(),
            [&](int depth, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
                if (event == nlohmann::json::parse_event_t::key && depth == 1) {
                    keys.push_back(parsed.get<std::string>());
                }
                return true;
            });
    } catch (const nlohmann::json::parse_error& e) {
        errors.push_back(std::string("JSON parse error: ") + e.what());
        return out;
    }
    if (!doc.is_object()) {
        errors.push_back("JSON configuration must be an object");
        return out;
    }
    // The parsed object keeps only the last of repeated keys; report them here.
    std::set<std::string> seen;
    for (const auto& k : keys) {
        if (!seen.insert(k).second) {
            out.emplace_back(k, json_scalar(doc[k]));
        }
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::string value;
        if (it->is_array()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                if (i) value += ',';
                value += json_scalar((*it)[i]);
            }
        } else if (it->is_boolean() || it->is_object() || it->is_null()) {
            errors.push_back(it.key() + ": unsupported JSON value " + it->dump());
            continue;
        } else {
            value = json_scalar(*it);
        }
        out.emplace_back(it.key(), value);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    std::vector<std::string> errors;
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool is_json = first != text.npos && text[first] == '{';
    const Entries entries = is_json ? parse_json(text, errors) : parse_key_value(text, errors);

    ExperimentConfig cfg;
    std::set<std::string> seen;
    for (const auto& [k, v] : entries) {
        if (!seen.insert(k).second) {
            errors.push_back("duplicate key '" + k + "'");
            continue;
        }
        apply_setting(cfg, k, v, errors);
    }
    if (errors.empty()) {
        auto more = validation_errors(cfg);
        errors.insert(errors.end(), more.begin(), more.end());
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

std::vector<std::string> validation_errors(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;
    auto num = [](double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    const ModelSpace space{cfg.space};

    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        errors.push_back("dt = " + num(cfg.dt) + " violates dt > 0");
    }
    if (cfg.t.empty()) errors.push_back("t: at least one horizon is required");
    for (double t : cfg.t) {
        if (!std::isfinite(t) || !(t >= cfg.dt)) {
            errors.push_back("t = " + num(t) + " violates dt <= t < inf");
        }
        if (cfg.command == Command::Table && cfg.space == SpaceKind::Flat && !(t > 1.0)) {
            errors.push_back("t = " + num(t) + " violates t > 1 (log scaling of the flat table)");
        }
    }
    if (cfg.command == Command::Simulate && cfg.t.size() > 1) {
        errors.push_back("t: simulate takes a single horizon");
    }
    if ((cfg.command == Command::Simulate || cfg.command == Command::Charfn) && cfg.paths == 0) {
        errors.push_back("paths = 0 violates paths >= 1");
    }
    if (cfg.lambda.empty()) errors.push_back("lambda: at least one value is required");
    for (double l : cfg.lambda) {
        if (!(l >= 0.0) || !std::isfinite(l)) {
            errors.push_back("lambda = " + num(l) + " violates 0 <= |lambda| < inf");
        }
    }
    const double r0 = cfg.effective_r0();
    if (!(r0 > 0.0) || !space.in_radial_domain(r0)) {
        errors.push_back("r0 = " + num(r0) +
                         (cfg.space == SpaceKind::Projective ? " violates 0 < r0 < pi/2"
                                                            : " violates 0 < r0 < inf"));
    }
    if (cfg.w0) {
        const double n = norm(*cfg.w0);
        if (!std::isfinite(n) || !(n > 0.0)) {
            errors.push_back("w0 violates 0 < |w0| < inf");
        } else if (cfg.space == SpaceKind::Hyperbolic && !(n < 1.0)) {
            errors.push_back("w0 has norm " + num(n) +
                             ", violating the hyperbolic chart bound |w0| < 1");
        } else if (coord_radius(space, n) >= default_chart_r_max(cfg.space)) {
            errors.push_back("w0 lies at radius " + num(coord_radius(space, n)) +
                             ", beyond the coordinate chart radius " +
                             num(default_chart_r_max(cfg.space)));
        }
    } else if (cfg.mode == SimMode::Coordinate && cfg.space == SpaceKind::Projective &&
               space.in_radial_domain(r0) && r0 >= default_chart_r_max(cfg.space)) {
        errors.push_back("r0 = " + num(r0) + " lies beyond the coordinate chart radius " +
                         num(default_chart_r_max(cfg.space)));
    }
    if (cfg.mode == SimMode::Coordinate && cfg.command != Command::Simulate) {
        errors.push_back("mode = coordinate applies to the simulate command only");
    }
    return errors;
}

void validate(const ExperimentConfig& cfg) {
    auto errors = validation_errors(cfg);
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

std::string canonical_string(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    auto list = [&](const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    os << "command=" << to_string(cfg.command) << '\n';
    os << "space=" << to_string(cfg.space) << '\n';
    os << "t=";
    list(cfg.t);
    os << "\ndt=" << cfg.dt << '\n';
    os << "paths=" << cfg.paths << '\n';
    os << "r0=" << cfg.effective_r0() << '\n';
    const Octonion w = cfg.effective_w0();
    os << "w0=";
    list(std::vector<double>(w.c.begin(), w.c.end()));
    os << "\nlambda=";
    list(cfg.lambda);
    os << "\nseed=" << cfg.seed << '\n';
    os << "scheme=" << to_string(cfg.scheme) << '\n';
    os << "suite=" << cfg.suite << '\n';
    os << "mode=" << to_string(cfg.mode) << '\n';
    os << "stride=" << cfg.stride << '\n';
    return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_string(cfg)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const ExperimentConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

}  // namespace octowind
