#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mediumband/experiments.hpp"

namespace mediumband {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "lo:hi:step" (inclusive) or a comma-separated list.
std::vector<double> parse_percent_list(std::string_view text);

/// Comma-separated list of positive integers.
std::vector<int> parse_int_list(std::string_view text);

/// Applies one `key = value` setting to cfg. Keys: beta, n, tm_percent,
/// percents, profile, kappa, trials, min_trials, tolerance, seed, step,
/// refine, widen, es, sigma2, saturation_db, workers.
/// Throws ConfigError for unknown keys or unparsable values.
void apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value);

/// Parses flat `key = value` text (`#` starts a comment) on top of base and
/// validates the result.
SweepConfig parse_config_text(std::string_view text, const SweepConfig& base = {});

/// Reads and parses a configuration file. Throws ConfigError when the file is
/// missing, a key is unknown, a value has the wrong type, or a parameter is
/// out of range.
SweepConfig load_config(const std::filesystem::path& path, const SweepConfig& base = {});

/// Inverse of parse_config_text(): every key, full precision.
std::string format_config(const SweepConfig& cfg);

} // namespace mediumband
