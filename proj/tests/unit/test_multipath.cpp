#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mediumband/multipath.hpp"

using namespace mediumband;

namespace {

// Kolmogorov-Smirnov statistic of samples against the uniform CDF on [0, 1).
double ks_uniform(std::vector<double> x)
{
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max(d, (i + 1) / n - x[i]);
        d = std::max(d, x[i] - i / n);
    }
    return d;
}

} // namespace

TEST_CASE("profile amplitudes")
{
    const RealVector uni = profile_amplitudes({ProfileKind::Uniform, 0.5}, 4);
    CHECK(uni.size() == 4);
    for (double a : uni)
        CHECK(a == doctest::Approx(0.5).epsilon(1e-15));

    // exp(-0.5 n) normalized to unit power; frozen from a 40-digit evaluation.
    const RealVector ex = profile_amplitudes({ProfileKind::Exponential, 0.5}, 3);
    CHECK(ex(0) == doctest::Approx(0.81562304759908660).epsilon(1e-14));
    CHECK(ex(1) == doctest::Approx(0.49470038513710261).epsilon(1e-14));
    CHECK(ex(2) == doctest::Approx(0.30005095095730068).epsilon(1e-14));
    CHECK(ex.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(profile_amplitudes({ProfileKind::Exponential, 0.0}, 5).isApprox(
        profile_amplitudes({ProfileKind::Uniform, 0.0}, 5), 1e-15));
    CHECK_THROWS(profile_amplitudes({ProfileKind::Uniform, 0.5}, 0));
    CHECK_THROWS(profile_amplitudes({ProfileKind::Exponential, -1.0}, 3));
}

TEST_CASE("profile names round-trip")
{
    CHECK(parse_profile("uniform") == ProfileKind::Uniform);
    CHECK(parse_profile("exponential") == ProfileKind::Exponential);
    CHECK(parse_profile(to_string(ProfileKind::Exponential)) == ProfileKind::Exponential);
    CHECK_THROWS_AS(parse_profile("rayleigh"), std::invalid_argument);
}

TEST_CASE("realizations have unit power, zero first delay and sorted delays")
{
    ChannelConfig cfg;
    cfg.num_paths = 7;
    cfg.delay_spread = 0.9;
    RandomStream rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto r = sample_realization(cfg, rng);
        REQUIRE(r.size() == 7);
        CHECK(r.gains.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.delays(0) == 0.0);
        CHECK(std::is_sorted(r.delays.begin(), r.delays.end()));
        CHECK(r.delays.maxCoeff() <= 0.9);
    }
}

TEST_CASE("a single path is a flat channel")
{
    ChannelConfig cfg;
    cfg.num_paths = 1;
    cfg.delay_spread = 0.5;
    const auto r = sample_realization(cfg);
    CHECK(r.size() == 1);
    CHECK(std::abs(r.gains(0)) == doctest::Approx(1.0));
    CHECK(r.delays(0) == 0.0);
    CHECK(realized_delay_spread(r) == 0.0);
}

TEST_CASE("zero delay spread puts every path at tau = 0")
{
    ChannelConfig cfg;
    cfg.num_paths = 5;
    cfg.delay_spread = 0.0;
    const auto r = sample_realization(cfg);
    CHECK(r.delays.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("same seed gives an identical realization")
{
    ChannelConfig cfg;
    cfg.seed = 42;
    const auto a = sample_realization(cfg);
    const auto b = sample_realization(cfg);
    CHECK(a.gains == b.gains);
    CHECK(a.delays == b.delays);
    cfg.seed = 43;
    const auto c = sample_realization(cfg);
    CHECK(a.gains != c.gains);
}

TEST_CASE("delays and phases are uniform (Kolmogorov-Smirnov, 1% level)")
{
    ChannelConfig cfg;
    cfg.num_paths = 2;
    cfg.delay_spread = 0.7;
    RandomStream rng(2024);
    const int n = 100000;
    std::vector<double> delays, phases0, phases1;
    for (int i = 0; i < n; ++i) {
        const auto r = sample_realization(cfg, rng);
        delays.push_back(r.delays(1) / 0.7);
        for (auto* dst : {&phases0, &phases1}) {
            const Complex g = r.gains(dst == &phases0 ? 0 : 1);
            double phi = -std::arg(g);
            if (phi < 0.0)
                phi += 2.0 * std::numbers::pi;
            dst->push_back(phi / (2.0 * std::numbers::pi));
        }
    }
    const double critical = 1.6276 / std::sqrt(static_cast<double>(n));
    CHECK(ks_uniform(delays) < critical);
    CHECK(ks_uniform(phases0) < critical);
    CHECK(ks_uniform(phases1) < critical);
}

TEST_CASE("realized spread never exceeds the configured spread")
{
    ChannelConfig cfg;
    cfg.num_paths = 10;
    cfg.delay_spread = 0.35;
    RandomStream rng(5);
    double max_seen = 0.0;
    for (int i = 0; i < 10000; ++i)
        max_seen = std::max(max_seen, realized_delay_spread(sample_realization(cfg, rng)));
    CHECK(max_seen <= 0.35);
    CHECK(max_seen > 0.34);
}

TEST_CASE("percentage delay spread")
{
    CHECK(percentage_delay_spread(0.6) == doctest::Approx(60.0));
    CHECK(percentage_delay_spread(0.1) == doctest::Approx(10.0));
    CHECK(percentage_delay_spread(1.0e-6, 2.0e-6) == doctest::Approx(50.0));
    CHECK_THROWS_AS(percentage_delay_spread(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("scale_delays scales delays and the configured spread")
{
    ChannelConfig cfg;
    cfg.seed = 3;
    const auto r = sample_realization(cfg);
    const auto s = scale_delays(r, 0.5);
    CHECK(s.gains == r.gains);
    CHECK(s.delays.isApprox(0.5 * r.delays));
    CHECK(s.config.delay_spread == doctest::Approx(0.3));
    CHECK_THROWS(scale_delays(r, -1.0));
}

TEST_CASE("config validation")
{
    ChannelConfig cfg;
    cfg.num_paths = 0;
    CHECK_THROWS(cfg.validate());
    cfg.num_paths = 3;
    cfg.delay_spread = -0.1;
    CHECK_THROWS(cfg.validate());
}
