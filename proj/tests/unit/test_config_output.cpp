#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mediumband/config.hpp"
#include "mediumband/output.hpp"

using namespace mediumband;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("percent and integer lists")
{
    const auto range = parse_percent_list("10:90:10");
    REQUIRE(range.size() == 9);
    CHECK(range.front() == 10.0);
    CHECK(range.back() == 90.0);
    CHECK(parse_percent_list("5,12.5, 40") == std::vector<double>{5.0, 12.5, 40.0});
    CHECK(parse_percent_list("0.1:0.3:0.1").size() == 3);
    CHECK_THROWS_AS(parse_percent_list("10:90:0"), ConfigError);
    CHECK_THROWS_AS(parse_percent_list("abc"), ConfigError);
    CHECK(parse_int_list("2,5,10") == std::vector<int>{2, 5, 10});
    CHECK_THROWS_AS(parse_int_list("2,x"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("0"), ConfigError);
}

TEST_CASE("empty config gives the defaults")
{
    CHECK(parse_config_text("") == SweepConfig{});
    CHECK(parse_config_text("# only a comment\n\n") == SweepConfig{});
    const auto path = write_temp("mediumband_empty.cfg", "");
    CHECK(load_config(path) == SweepConfig{});
}

TEST_CASE("config parsing")
{
    const auto cfg = parse_config_text(
        "beta = 0.5\nn = 2,5,10  # paths\nprofile = exponential\nkappa = 0.3\n"
        "percents = 10:30:10\ntrials = 321\nseed = 99\nstep = 0.01\nrefine = false\n");
    CHECK(cfg.beta == 0.5);
    CHECK(cfg.n_paths == std::vector<int>{2, 5, 10});
    CHECK(cfg.profile.kind == ProfileKind::Exponential);
    CHECK(cfg.profile.kappa == 0.3);
    CHECK(cfg.delay_spread_percents.size() == 3);
    CHECK(cfg.trials == 321);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.timing.grid_step == 0.01);
    CHECK_FALSE(cfg.timing.refine);
}

TEST_CASE("config errors")
{
    try {
        parse_config_text("beta = 1.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("[0, 1]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("trials = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("beta\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/mediumband.cfg"), ConfigError);
}

TEST_CASE("format_config round-trips")
{
    SweepConfig cfg;
    cfg.beta = 0.35;
    cfg.n_paths = {3, 7};
    cfg.delay_spread_percents = {12.5, 33.0};
    cfg.profile = {ProfileKind::Exponential, 0.7};
    cfg.master_seed = 123456789012345ULL;
    cfg.timing.grid_step = 1.0 / 300.0;
    cfg.sigma2 = 1e-3;
    CHECK(parse_config_text(format_config(cfg)) == cfg);
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
    CHECK(config_from_json(nlohmann::json::parse(config_to_json(cfg).dump())) == cfg);
}

TEST_CASE("realization JSON round-trips")
{
    ChannelConfig cc;
    cc.num_paths = 4;
    cc.seed = 77;
    const auto r = sample_realization(cc);
    const auto back = realization_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back.gains == r.gains);
    CHECK(back.delays == r.delays);
    CHECK(back.config == r.config);
}

TEST_CASE("number formatting")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("sweep CSV and JSON")
{
    SweepResult a;
    a.point = 10;
    a.sir_db = 12.5;
    a.trials = 100;
    SweepResult b = a;
    b.point = 1;
    b.sir_db = std::numeric_limits<double>::infinity();
    const std::string csv = sweep_csv({a, b});
    CHECK(csv.rfind("percent_or_N,sir_db,desired_mean,interference_mean,trials,stderr_desired,"
                    "stderr_interference,realized_tm_mean\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find(",inf,") != std::string::npos);

    RunManifest m;
    m.subcommand = "sir-sweep";
    m.master_seed = 5;
    const auto j = sweep_json({a, b}, m);
    CHECK(j["results"][1]["sir_db"].is_null());
    CHECK(j["manifest"]["master_seed"] == 5);
    CHECK(j["manifest"]["version"] == MEDIUMBAND_VERSION);
}

TEST_CASE("autocorrelation CSV")
{
    const std::string csv = autocorr_csv(PulseShape(0.8), 1.0, 0.5);
    CHECK(csv == "tau_over_Ts,R\n"
                 "-1,"  + format_double(eval_autocorr(PulseShape(0.8), -1.0)) + "\n"
                 "-0.5," + format_double(eval_autocorr(PulseShape(0.8), -0.5)) + "\n"
                 "0,0.80000000000000004\n"
                 "0.5," + format_double(eval_autocorr(PulseShape(0.8), 0.5)) + "\n"
                 "1,"  + format_double(eval_autocorr(PulseShape(0.8), 1.0)) + "\n");
}

TEST_CASE("timestamps honour SOURCE_DATE_EPOCH")
{
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    CHECK(utc_timestamp() == "1970-01-01T00:00:00Z");
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(utc_timestamp().size() == 20);
}
