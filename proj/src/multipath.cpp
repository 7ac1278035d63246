#include "mediumband/multipath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mediumband {

std::string to_string(ProfileKind kind)
{
    return kind == ProfileKind::Uniform ? "uniform" : "exponential";
}

ProfileKind parse_profile(std::string_view name)
{
    if (name == "uniform")
        return ProfileKind::Uniform;
    if (name == "exponential")
        return ProfileKind::Exponential;
    throw std::invalid_argument("unknown amplitude profile '" + std::string(name)
                                + "' (expected uniform or exponential)");
}

void AmplitudeProfile::validate() const
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be a finite value >= 0");
}

void ChannelConfig::validate() const
{
    if (num_paths < 1)
        throw std::invalid_argument("number of paths must be >= 1");
    if (!(delay_spread >= 0.0) || !std::isfinite(delay_spread))
        throw std::invalid_argument("delay spread must be a finite value >= 0");
    profile.validate();
}

RealVector profile_amplitudes(const AmplitudeProfile& profile, int n_paths)
{
    if (n_paths < 1)
        throw std::invalid_argument("profile_amplitudes: n_paths must be >= 1");
    profile.validate();

    RealVector a(n_paths);
    if (profile.kind == ProfileKind::Uniform) {
        a.setConstant(1.0 / std::sqrt(static_cast<double>(n_paths)));
        return a;
    }
    for (int n = 0; n < n_paths; ++n)
        a(n) = std::exp(-profile.kappa * n);
    return a / a.norm();
}

ChannelRealization sample_realization(const ChannelConfig& config, RandomStream& rng)
{
    config.validate();
    const int n = config.num_paths;

    RealVector delays(n);
    delays(0) = 0.0;
    for (int i = 1; i < n; ++i)
        delays(i) = config.delay_spread * rng.uniform();
    std::sort(delays.begin(), delays.end());

    const RealVector amplitudes = profile_amplitudes(config.profile, n);
    ComplexVector gains(n);
    for (int i = 0; i < n; ++i) {
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        gains(i) = std::polar(amplitudes(i), -phase);
    }
    return {std::move(gains), std::move(delays), config};
}

ChannelRealization sample_realization(const ChannelConfig& config)
{
    RandomStream rng(config.seed);
    return sample_realization(config, rng);
}

double realized_delay_spread(const ChannelRealization& realization)
{
    return realization.delays.maxCoeff() - realization.delays(0);
}

double percentage_delay_spread(double t_m, double t_s)
{
    if (!(t_s > 0.0))
        throw std::invalid_argument("symbol period must be positive");
    return t_m / t_s * 100.0;
}

ChannelRealization scale_delays(const ChannelRealization& realization, double factor)
{
    if (!(factor >= 0.0))
        throw std::invalid_argument("delay scale factor must be >= 0");
    ChannelRealization out = realization;
    out.delays *= factor;
    out.config.delay_spread *= factor;
    return out;
}

} // namespace mediumband
