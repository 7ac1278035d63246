#include "mediumband/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "mediumband/config.hpp"

namespace mediumband {

namespace {

nlohmann::json complex_pair(Complex z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

void put_ratio(nlohmann::json& j, const std::string& key, double value)
{
    if (std::isinf(value)) {
        j[key] = nullptr;
        j[key + "_infinite"] = true;
    } else {
        j[key] = value;
        j[key + "_infinite"] = false;
    }
}

} // namespace

std::string format_double(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << value;
    return os.str();
}

std::string utc_timestamp()
{
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            now = static_cast<std::time_t>(std::stoll(epoch));
        } catch (const std::exception&) {
        }
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest& manifest)
{
    return {{"subcommand", manifest.subcommand},
            {"config", manifest.config},
            {"master_seed", manifest.master_seed},
            {"started_at", manifest.started_at},
            {"finished_at", manifest.finished_at},
            {"version", manifest.version}};
}

nlohmann::json config_to_json(const SweepConfig& cfg)
{
    return {{"beta", cfg.beta},
            {"n", cfg.n_paths},
            {"percents", cfg.delay_spread_percents},
            {"profile", to_string(cfg.profile.kind)},
            {"kappa", cfg.profile.kappa},
            {"trials", cfg.trials},
            {"min_trials", cfg.min_trials},
            {"tolerance", cfg.convergence_rel_tol},
            {"seed", cfg.master_seed},
            {"step", cfg.timing.grid_step},
            {"refine", cfg.timing.refine},
            {"widen", cfg.timing.widen},
            {"es", cfg.e_s},
            {"sigma2", cfg.sigma2},
            {"saturation_db", cfg.saturation_db},
            {"workers", cfg.workers}};
}

SweepConfig config_from_json(const nlohmann::json& j, const SweepConfig& base)
{
    // Route every key through the same setter the config file uses.
    SweepConfig cfg = base;
    for (const auto& [key, value] : j.items()) {
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i)
                text += (i ? "," : "")
                        + (value[i].is_number_float() ? format_double(value[i].get<double>()) : value[i].dump());
        } else if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_number_float()) {
            text = format_double(value.get<double>());
        } else {
            text = value.dump();
        }
        apply_setting(cfg, key, text);
    }
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const ChannelConfig& config)
{
    return {{"num_paths", config.num_paths},
            {"delay_spread", config.delay_spread},
            {"profile", to_string(config.profile.kind)},
            {"kappa", config.profile.kappa},
            {"seed", config.seed}};
}

nlohmann::json to_json(const ChannelRealization& realization)
{
    nlohmann::json gains = nlohmann::json::array();
    nlohmann::json delays = nlohmann::json::array();
    for (Eigen::Index n = 0; n < realization.size(); ++n) {
        gains.push_back(complex_pair(realization.gains(n)));
        delays.push_back(realization.delays(n));
    }
    return {{"gains", gains}, {"delays", delays}, {"config", to_json(realization.config)}};
}

ChannelRealization realization_from_json(const nlohmann::json& j)
{
    ChannelRealization r;
    const auto& cfg = j.at("config");
    r.config.num_paths = cfg.at("num_paths").get<int>();
    r.config.delay_spread = cfg.at("delay_spread").get<double>();
    r.config.profile.kind = parse_profile(cfg.at("profile").get<std::string>());
    r.config.profile.kappa = cfg.at("kappa").get<double>();
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    const auto& gains = j.at("gains");
    const auto& delays = j.at("delays");
    r.gains.resize(static_cast<Eigen::Index>(gains.size()));
    r.delays.resize(static_cast<Eigen::Index>(delays.size()));
    for (std::size_t n = 0; n < gains.size(); ++n) {
        r.gains(static_cast<Eigen::Index>(n)) = {gains[n].at(0).get<double>(), gains[n].at(1).get<double>()};
        r.delays(static_cast<Eigen::Index>(n)) = delays[n].get<double>();
    }
    return r;
}

std::string sweep_csv(const std::vector<SweepResult>& results)
{
    std::ostringstream os;
    os << "percent_or_N,sir_db,desired_mean,interference_mean,trials,stderr_desired,stderr_interference,"
          "realized_tm_mean\n";
    for (const auto& r : results) {
        os << format_double(r.point) << ',' << format_double(r.sir_db) << ',' << format_double(r.desired_mean)
           << ',' << format_double(r.interference_mean) << ',' << r.trials << ','
           << format_double(r.stderr_desired) << ',' << format_double(r.stderr_interference) << ','
           << format_double(r.realized_tm_mean) << '\n';
    }
    return os.str();
}

nlohmann::json sweep_json(const std::vector<SweepResult>& results, const RunManifest& manifest)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json row{{"percent_or_N", r.point},
                           {"desired_mean", r.desired_mean},
                           {"interference_mean", r.interference_mean},
                           {"trials", r.trials},
                           {"stderr_desired", r.stderr_desired},
                           {"stderr_interference", r.stderr_interference},
                           {"realized_tm_mean", r.realized_tm_mean},
                           {"sir_db_stderr", r.sir_db_stderr},
                           {"converged", r.converged}};
        put_ratio(row, "sir_db", r.sir_db);
        rows.push_back(std::move(row));
    }
    return {{"manifest", to_json(manifest)}, {"results", rows}};
}

std::string autocorr_csv(const PulseShape& pulse, double tau_max, double step)
{
    if (!(step > 0.0) || !(tau_max >= 0.0))
        throw std::invalid_argument("autocorrelation table needs tau_max >= 0 and step > 0");
    std::ostringstream os;
    os << "tau_over_Ts,R\n";
    const auto half = static_cast<long>(std::floor(tau_max / step + 1e-9));
    for (long i = -half; i <= half; ++i) {
        const double tau = static_cast<double>(i) * step;
        os << format_double(tau) << ',' << format_double(eval_autocorr(pulse, tau * pulse.symbol_period())) << '\n';
    }
    return os.str();
}

nlohmann::json realization_report(const ChannelRealization& realization, const FadingCoefficients& coeffs,
                                  const PulseShape& pulse)
{
    nlohmann::json j = to_json(realization);
    j["beta"] = pulse.beta();
    j["tau_hat"] = coeffs.tau_hat;
    j["h_o"] = complex_pair(coeffs.h_o);
    j["eta_o"] = coeffs.eta_o;
    j["realized_delay_spread"] = realized_delay_spread(realization);
    const double sir = closed_form_sir(coeffs, pulse);
    put_ratio(j, "sir", sir);
    put_ratio(j, "sir_db", std::isinf(sir) ? sir : 10.0 * std::log10(sir));
    return j;
}

} // namespace mediumband
