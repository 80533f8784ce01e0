#include "octowind/config.hpp"
#include "octowind/experiment.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <numbers>
#include <sstream>

using namespace octowind;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
    return std::any_of(e.violations().begin(), e.violations().end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

std::string run(const ExperimentConfig& cfg, int& status) {
    std::ostringstream data, log;
    status = run_experiment(cfg, data, log);
    return data.str();
}

}  // namespace

TEST(Config, MinimalFlatGetsDefaults) {
    const auto cfg = parse_config("space = flat\n");
    EXPECT_EQ(cfg.space, SpaceKind::Flat);
    EXPECT_EQ(cfg.dt, 1e-3);
    EXPECT_EQ(cfg.scheme, Scheme::StratonovichHeun);
    EXPECT_EQ(cfg.seed, kDefaultSeed);
    EXPECT_EQ(cfg.effective_r0(), 1.0);
    EXPECT_EQ(parse_config("space = projective").effective_r0(), std::numbers::pi / 4.0);
}

TEST(Config, KeyValueGrammar) {
    const auto cfg = parse_config(
        "# experiment\n"
        "command = charfn\n"
        "space = hyperbolic   # trailing comment\n"
        "t = 1, 2.5\n"
        "lambda = 0.5,1\n"
        "paths = 200\n"
        "scheme = euler\n"
        "seed = 7\n");
    EXPECT_EQ(cfg.command, Command::Charfn);
    EXPECT_EQ(cfg.t, (std::vector<double>{1.0, 2.5}));
    EXPECT_EQ(cfg.lambda, (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(cfg.paths, 200u);
    EXPECT_EQ(cfg.scheme, Scheme::EulerMaruyama);
    EXPECT_EQ(cfg.seed, 7u);
}

TEST(Config, Json) {
    const auto cfg = parse_config(R"({"space": "op1", "t": [10, 20], "paths": 50, "r0": 0.5})");
    EXPECT_EQ(cfg.space, SpaceKind::Projective);
    EXPECT_EQ(cfg.t, (std::vector<double>{10.0, 20.0}));
    EXPECT_EQ(cfg.paths, 50u);
    EXPECT_EQ(cfg.effective_r0(), 0.5);
}

TEST(Config, UnknownKeyRejected) {
    try {
        parse_config("space = flat\nlamda = 1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "unknown key 'lamda'"));
    }
}

TEST(Config, DuplicateKeyRejected) {
    try {
        parse_config("space = flat\nspace = hyperbolic\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "duplicate key 'space'"));
    }
    try {
        parse_config(R"({"dt": 0.1, "dt": 0.2})");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "duplicate key 'dt'"));
    }
}

TEST(Config, HyperbolicChartBound) {
    try {
        parse_config("space = hyperbolic\nw0 = 1, 0, 0, 0, 0, 0, 0, 0\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "hyperbolic chart bound |w0| < 1"));
    }
}

TEST(Config, AllViolationsListed) {
    try {
        parse_config("space = projective\ndt = -1\nr0 = 2\nlambda = -3\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "dt = -1 violates dt > 0"));
        EXPECT_TRUE(mentions(e, "0 < r0 < pi/2"));
        EXPECT_TRUE(mentions(e, "lambda = -3"));
        EXPECT_GE(e.violations().size(), 3u);
    }
}

TEST(Config, MalformedValues) {
    try {
        parse_config("paths = many\nspace = moon\nthis line has no equals\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "paths"));
        EXPECT_TRUE(mentions(e, "space"));
        EXPECT_TRUE(mentions(e, "line 3"));
    }
}

TEST(Config, HashIgnoresOutputAndThreads) {
    auto a = parse_config("space = flat\nt = 2\n");
    auto b = a;
    b.output = "somewhere.csv";
    b.threads = 3;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.seed = 1;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash_hex(a).size(), 16u);
}

TEST(Experiment, VerifyAlgebraSucceeds) {
    ExperimentConfig cfg;
    cfg.command = Command::Verify;
    cfg.suite = "algebra";
    int status = -1;
    const auto out = run(cfg, status);
    EXPECT_EQ(status, 0);
    const auto j = nlohmann::json::parse(out);
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Experiment, CharfnColumnsAndReproducibility) {
    auto cfg = parse_config("command = charfn\nspace = hyperbolic\nt = 2\npaths = 200\nlambda = 0.5,1\n");
    cfg.threads = 2;
    int status = -1;
    const auto first = run(cfg, status);
    EXPECT_EQ(status, 0);
    cfg.threads = 1;
    const auto second = run(cfg, status);
    EXPECT_EQ(first, second);

    std::istringstream in(first);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# config_hash=" + config_hash_hex(cfg));
    std::getline(in, line);
    EXPECT_EQ(line, "space,lambda_norm,r0,t,n_paths,mc_value,mc_se,closed_form");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 2);
}

TEST(Experiment, FlatTable) {
    auto cfg = parse_config("command = table\nspace = flat\nt = 1e3,1e5,1e8\n");
    int status = -1;
    const auto out = run(cfg, status);
    EXPECT_EQ(status, 0);
    EXPECT_NE(out.find("space,lambda_norm,r0,t,closed_form,limit"), std::string::npos);
    EXPECT_NE(out.find("flat,1,1,100000000,"), std::string::npos);
}

TEST(Experiment, SimulateSinglePathWritesTrajectory) {
    auto cfg = parse_config("command = simulate\nspace = projective\nt = 0.1\npaths = 1\nmode = coordinate\n");
    int status = -1;
    const auto out = run(cfg, status);
    EXPECT_EQ(status, 0);
    EXPECT_NE(out.find("time,c0,c1"), std::string::npos);
}

TEST(Experiment, DomainErrorGivesNonzeroStatus) {
    ExperimentConfig cfg;
    cfg.command = Command::Charfn;
    cfg.dt = -1.0;
    int status = -1;
    run(cfg, status);
    EXPECT_EQ(status, 2);
}
