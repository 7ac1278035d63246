#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mediumband/experiments.hpp"
#include "mediumband/mediumband_model.hpp"

namespace mediumband {

/// Accompanies every emitted result: what ran, with which resolved settings.
struct RunManifest {
    std::string subcommand;
    nlohmann::json config;
    std::uint64_t master_seed = 0;
    std::string started_at;
    std::string finished_at;
    std::string version = MEDIUMBAND_VERSION;
};

nlohmann::json to_json(const RunManifest& manifest);

/// UTC ISO-8601 time; SOURCE_DATE_EPOCH, when set, pins it for reproducible output.
std::string utc_timestamp();

/// 17 significant digits, '.' decimal separator; infinities as "inf" / "-inf".
std::string format_double(double value);

nlohmann::json config_to_json(const SweepConfig& cfg);
SweepConfig config_from_json(const nlohmann::json& j, const SweepConfig& base = {});

nlohmann::json to_json(const ChannelConfig& config);
nlohmann::json to_json(const ChannelRealization& realization);
ChannelRealization realization_from_json(const nlohmann::json& j);

/// Header `percent_or_N,sir_db,desired_mean,interference_mean,trials,stderr_desired,stderr_interference,realized_tm_mean`.
std::string sweep_csv(const std::vector<SweepResult>& results);

/// Results plus manifest. Infinite SIR is written as null with "sir_infinite": true.
nlohmann::json sweep_json(const std::vector<SweepResult>& results, const RunManifest& manifest);

/// `tau_over_Ts,R` rows for tau in [-tau_max, tau_max] with the given step.
std::string autocorr_csv(const PulseShape& pulse, double tau_max, double step);

/// Realization, chosen timing, h_o and eta_o, and the closed-form SIR.
nlohmann::json realization_report(const ChannelRealization& realization, const FadingCoefficients& coeffs,
                                  const PulseShape& pulse);

} // namespace mediumband
