#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mediumband/random.hpp"
#include "mediumband/types.hpp"

namespace mediumband {

enum class ProfileKind { Uniform, Exponential };

std::string to_string(ProfileKind kind);

/// Parses "uniform" or "exponential"; throws std::invalid_argument otherwise.
ProfileKind parse_profile(std::string_view name);

struct AmplitudeProfile {
    ProfileKind kind = ProfileKind::Uniform;
    double kappa = 0.5; ///< decay rate, only read for Exponential

    void validate() const;
    friend bool operator==(const AmplitudeProfile&, const AmplitudeProfile&) = default;
};

/// Generating configuration of a random multipath channel. Times are in units
/// of the symbol period.
struct ChannelConfig {
    int num_paths = 5;
    double delay_spread = 0.6; ///< configured T_m; delays are drawn on [0, T_m]
    AmplitudeProfile profile;
    std::uint64_t seed = 0;

    void validate() const;
    friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

/// One draw of the multipath channel: gains[n] = alpha_n exp(-j phi_n) at
/// delays[n]. Delays are sorted ascending with delays[0] = 0, so path index
/// follows arrival order and sum |gains|^2 = 1.
struct ChannelRealization {
    ComplexVector gains;
    RealVector delays;
    ChannelConfig config;

    Eigen::Index size() const noexcept { return gains.size(); }
};

/// Unit-power amplitude profile: all 1/sqrt(N), or proportional to exp(-kappa n).
RealVector profile_amplitudes(const AmplitudeProfile& profile, int n_paths);

/// Draws tau_1..tau_{N-1} ~ U[0, T_m] (tau_0 = 0), then phi_0..phi_{N-1} ~ U[0, 2 pi),
/// sorts the delays ascending and assigns profile amplitudes in that order.
ChannelRealization sample_realization(const ChannelConfig& config, RandomStream& rng);

/// Same as above with a stream seeded from config.seed.
ChannelRealization sample_realization(const ChannelConfig& config);

/// max_n tau_n - tau_0.
double realized_delay_spread(const ChannelRealization& realization);

/// 100 * t_m / t_s; throws std::invalid_argument for t_s <= 0.
double percentage_delay_spread(double t_m, double t_s = 1.0);

/// Copy of the realization with every delay multiplied by factor (>= 0); the
/// configured spread is scaled alongside.
ChannelRealization scale_delays(const ChannelRealization& realization, double factor);

} // namespace mediumband
