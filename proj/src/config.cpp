#include "mediumband/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mediumband {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

double to_double(std::string_view key, std::string_view text)
{
    const std::string s(trim(text));
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + std::string(key) + "': expected a number, got '" + s + "'");
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text)
{
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("config key '" + std::string(key) + "': expected an integer, got '"
                          + std::string(text) + "'");
    return v;
}

bool to_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ConfigError("config key '" + std::string(key) + "': expected true or false, got '"
                      + std::string(text) + "'");
}

std::string join_doubles(const std::vector<double>& values)
{
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << values[i];
    return os.str();
}

} // namespace

std::vector<double> parse_percent_list(std::string_view text)
{
    text = trim(text);
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw ConfigError("percent range must look like lo:hi:step, got '" + std::string(text) + "'");
        const double lo = to_double("percents", parts[0]);
        const double hi = to_double("percents", parts[1]);
        const double step = to_double("percents", parts[2]);
        if (!(step > 0.0) || lo > hi)
            throw ConfigError("percent range needs lo <= hi and step > 0");
        std::vector<double> out;
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        for (long i = 0; i <= count; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (auto part : split(text, ','))
        out.push_back(to_double("percents", part));
    return out;
}

std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> out;
    for (auto part : split(trim(text), ',')) {
        const int value = to_integer<int>("n", part);
        if (value < 1)
            throw ConfigError("n: path counts must be >= 1, got " + std::to_string(value));
        out.push_back(value);
    }
    return out;
}

void apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value)
{
    try {
        if (key == "beta")
            cfg.beta = to_double(key, value);
        else if (key == "n")
            cfg.n_paths = parse_int_list(value);
        else if (key == "tm_percent")
            cfg.delay_spread_percents = {to_double(key, value)};
        else if (key == "percents")
            cfg.delay_spread_percents = parse_percent_list(value);
        else if (key == "profile")
            cfg.profile.kind = parse_profile(trim(value));
        else if (key == "kappa")
            cfg.profile.kappa = to_double(key, value);
        else if (key == "trials")
            cfg.trials = to_integer<int>(key, value);
        else if (key == "min_trials")
            cfg.min_trials = to_integer<int>(key, value);
        else if (key == "tolerance")
            cfg.convergence_rel_tol = to_double(key, value);
        else if (key == "seed")
            cfg.master_seed = to_integer<std::uint64_t>(key, value);
        else if (key == "step")
            cfg.timing.grid_step = to_double(key, value);
        else if (key == "refine")
            cfg.timing.refine = to_bool(key, value);
        else if (key == "widen")
            cfg.timing.widen = to_bool(key, value);
        else if (key == "es")
            cfg.e_s = to_double(key, value);
        else if (key == "sigma2")
            cfg.sigma2 = to_double(key, value);
        else if (key == "saturation_db")
            cfg.saturation_db = to_double(key, value);
        else if (key == "workers")
            cfg.workers = to_integer<int>(key, value);
        else
            throw ConfigError("unknown config key '" + std::string(key) + "'");
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config key '" + std::string(key) + "': " + e.what());
    }
}

SweepConfig parse_config_text(std::string_view text, const SweepConfig& base)
{
    SweepConfig cfg = base;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

SweepConfig load_config(const std::filesystem::path& path, const SweepConfig& base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), base);
}

std::string format_config(const SweepConfig& cfg)
{
    std::ostringstream os;
    os.precision(17);
    os << "beta = " << cfg.beta << '\n';
    os << "n = ";
    for (std::size_t i = 0; i < cfg.n_paths.size(); ++i)
        os << (i ? "," : "") << cfg.n_paths[i];
    os << '\n';
    os << "percents = " << join_doubles(cfg.delay_spread_percents) << '\n';
    os << "profile = " << to_string(cfg.profile.kind) << '\n';
    os << "kappa = " << cfg.profile.kappa << '\n';
    os << "trials = " << cfg.trials << '\n';
    os << "min_trials = " << cfg.min_trials << '\n';
    os << "tolerance = " << cfg.convergence_rel_tol << '\n';
    os << "seed = " << cfg.master_seed << '\n';
    os << "step = " << cfg.timing.grid_step << '\n';
    os << "refine = " << (cfg.timing.refine ? "true" : "false") << '\n';
    os << "widen = " << (cfg.timing.widen ? "true" : "false") << '\n';
    os << "es = " << cfg.e_s << '\n';
    os << "sigma2 = " << cfg.sigma2 << '\n';
    os << "saturation_db = " << cfg.saturation_db << '\n';
    os << "workers = " << cfg.workers << '\n';
    return os.str();
}

} // namespace mediumband
