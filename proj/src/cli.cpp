#include "mediumband/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mediumband/config.hpp"
#include "mediumband/output.hpp"
#include "mediumband/validation.hpp"
#include "mediumband/waveform_oracle.hpp"

namespace mediumband {

namespace {

// Raw flag values; only those actually given on the command line override
// the config file.
struct SweepFlags {
    double beta = 0.8;
    std::string n;
    double tm_percent = 60.0;
    std::string percents;
    std::string profile;
    double kappa = 0.5;
    int trials = 2000;
    int min_trials = 100;
    double tolerance = 1e-3;
    std::uint64_t seed = 1;
    double step = 1.0 / 200.0;
    double es = 1.0;
    double sigma2 = 0.0;
    int workers = 0;
    std::string out;
    std::string format = "csv";
    std::string config;

    CLI::Option* o_beta = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_tm = nullptr;
    CLI::Option* o_percents = nullptr;
    CLI::Option* o_profile = nullptr;
    CLI::Option* o_kappa = nullptr;
    CLI::Option* o_trials = nullptr;
    CLI::Option* o_min_trials = nullptr;
    CLI::Option* o_tolerance = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_step = nullptr;
    CLI::Option* o_es = nullptr;
    CLI::Option* o_sigma2 = nullptr;
    CLI::Option* o_workers = nullptr;
};

void add_sweep_flags(CLI::App& app, SweepFlags& f)
{
    f.o_beta = app.add_option("--beta", f.beta, "Roll-off factor in [0, 1]");
    f.o_n = app.add_option("--n", f.n, "Number of paths (comma list for n-sweep)");
    f.o_tm = app.add_option("--tm-percent", f.tm_percent, "Delay spread in percent of Ts");
    f.o_percents = app.add_option("--percents", f.percents, "lo:hi:step or comma list of percents");
    f.o_profile = app.add_option("--profile", f.profile, "Amplitude profile")
                      ->check(CLI::IsMember({"uniform", "exponential"}));
    f.o_kappa = app.add_option("--kappa", f.kappa, "Exponential profile decay rate");
    f.o_trials = app.add_option("--trials", f.trials, "Maximum fading realizations per point");
    f.o_min_trials = app.add_option("--min-trials", f.min_trials, "Trials before early stopping is allowed");
    f.o_tolerance = app.add_option("--tolerance", f.tolerance, "Relative convergence tolerance");
    f.o_seed = app.add_option("--seed", f.seed, "Master seed");
    f.o_step = app.add_option("--step", f.step, "Timing search grid step in Ts");
    f.o_es = app.add_option("--es", f.es, "Symbol energy E_s");
    f.o_sigma2 = app.add_option("--sigma2", f.sigma2, "Noise variance");
    f.o_workers = app.add_option("--workers", f.workers, "Worker threads (0: MEDIUMBAND_THREADS or all cores)");
    app.add_option("--out", f.out, "Output file (default: standard output)");
    app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", f.config, "key = value configuration file");
}

SweepConfig resolve_config(const SweepFlags& f, SweepConfig cfg)
{
    if (!f.config.empty())
        cfg = load_config(f.config, cfg);
    auto set = [&](CLI::Option* opt, std::string_view key, const std::string& value) {
        if (opt->count() > 0)
            apply_setting(cfg, key, value);
    };
    set(f.o_beta, "beta", format_double(f.beta));
    set(f.o_n, "n", f.n);
    set(f.o_tm, "tm_percent", format_double(f.tm_percent));
    set(f.o_percents, "percents", f.percents);
    set(f.o_profile, "profile", f.profile);
    set(f.o_kappa, "kappa", format_double(f.kappa));
    set(f.o_trials, "trials", std::to_string(f.trials));
    set(f.o_min_trials, "min_trials", std::to_string(f.min_trials));
    set(f.o_tolerance, "tolerance", format_double(f.tolerance));
    set(f.o_seed, "seed", std::to_string(f.seed));
    set(f.o_step, "step", format_double(f.step));
    set(f.o_es, "es", format_double(f.es));
    set(f.o_sigma2, "sigma2", format_double(f.sigma2));
    set(f.o_workers, "workers", std::to_string(f.workers));
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw ConfigError("cannot write output file '" + path + "'");
    file << text;
}

// CSV has no room for the manifest, so it goes next to the file (or to the
// diagnostic stream when writing to standard output).
void emit_with_manifest(const std::string& text, const std::string& format, const RunManifest& manifest,
                        const std::string& path, std::ostream& out, std::ostream& err)
{
    emit(text, path, out);
    if (format != "csv")
        return;
    const std::string manifest_text = to_json(manifest).dump(2) + "\n";
    if (path.empty())
        err << "manifest: " << to_json(manifest).dump() << '\n';
    else
        emit(manifest_text, path + ".manifest.json", out);
}

int run_sweep(const std::string& name, const SweepFlags& flags, const SweepConfig& defaults, std::ostream& out,
              std::ostream& err)
{
    const SweepConfig cfg = resolve_config(flags, defaults);
    RunManifest manifest;
    manifest.subcommand = name;
    manifest.config = config_to_json(cfg);
    manifest.master_seed = cfg.master_seed;
    manifest.started_at = utc_timestamp();
    const auto results = name == "sir-sweep" ? run_delay_spread_sweep(cfg) : run_n_sweep(cfg);
    manifest.finished_at = utc_timestamp();
    const std::string text = flags.format == "json" ? sweep_json(results, manifest).dump(2) + "\n" : sweep_csv(results);
    emit_with_manifest(text, flags.format, manifest, flags.out, out, err);
    return kExitOk;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mediumband channel characterization and Monte-Carlo experiments", "mediumband"};
    app.require_subcommand(1);

    // autocorr
    auto* autocorr = app.add_subcommand("autocorr", "Tabulate R(tau) as CSV (tau_over_Ts,R)");
    double ac_beta = 0.8;
    double ac_tau_max = 4.0;
    double ac_step = 0.01;
    std::string ac_out;
    autocorr->add_option("--beta", ac_beta, "Roll-off factor in [0, 1]");
    autocorr->add_option("--tau-max", ac_tau_max, "Largest |tau| in Ts");
    autocorr->add_option("--tau-step", ac_step, "Tabulation step in Ts");
    autocorr->add_option("--out", ac_out, "Output file");

    // realization
    auto* realization = app.add_subcommand("realization", "Sample one channel and report h_o, eta_o, SIR");
    int re_n = 5;
    double re_tm = 60.0;
    std::string re_profile = "uniform";
    double re_kappa = 0.5;
    std::uint64_t re_seed = 1;
    double re_beta = 0.8;
    double re_step = 1.0 / 200.0;
    std::string re_out;
    std::string re_format = "json";
    std::string re_dump;
    int re_frame = 200;
    realization->add_option("--n", re_n, "Number of paths");
    realization->add_option("--tm-percent", re_tm, "Delay spread in percent of Ts");
    realization->add_option("--profile", re_profile)->check(CLI::IsMember({"uniform", "exponential"}));
    realization->add_option("--kappa", re_kappa, "Exponential profile decay rate");
    realization->add_option("--seed", re_seed, "Seed");
    realization->add_option("--beta", re_beta, "Roll-off factor in [0, 1]");
    realization->add_option("--step", re_step, "Timing search grid step in Ts");
    realization->add_option("--out", re_out, "Output file");
    realization->add_option("--format", re_format)->check(CLI::IsMember({"csv", "json"}));
    realization->add_option("--dump-waveform", re_dump, "Write r(t) of a random BPSK frame as CSV (t_over_Ts,re,im)");
    realization->add_option("--frame-len", re_frame, "Symbols in the dumped frame");

    // sweeps
    SweepFlags sir_flags;
    auto* sir_sweep = app.add_subcommand("sir-sweep", "SIR vs. percentage delay spread");
    add_sweep_flags(*sir_sweep, sir_flags);
    SweepFlags n_flags;
    auto* n_sweep = app.add_subcommand("n-sweep", "SIR vs. number of paths");
    add_sweep_flags(*n_sweep, n_flags);

    // validate
    auto* validate = app.add_subcommand("validate", "Run the oracle-equivalence and invariant suite");
    ValidationOptions v_opts;
    std::string v_out;
    validate->add_option("--seed", v_opts.seed, "Seed");
    validate->add_flag("--quick", v_opts.quick, "Reduced sample sizes");
    validate->add_option("--workers", v_opts.workers, "Worker threads");
    validate->add_option("--out", v_out, "Report file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (autocorr->parsed()) {
            const PulseShape pulse(ac_beta);
            emit(autocorr_csv(pulse, ac_tau_max, ac_step), ac_out, out);
            return kExitOk;
        }
        if (realization->parsed()) {
            const PulseShape pulse(re_beta);
            ChannelConfig config;
            config.num_paths = re_n;
            config.delay_spread = re_tm / 100.0;
            config.profile = {parse_profile(re_profile), re_kappa};
            config.seed = re_seed;
            RandomStream rng(re_seed);
            const auto channel = sample_realization(config, rng);
            TimingSearchConfig timing;
            timing.grid_step = re_step;
            const auto coeffs = search_tau_hat(channel, pulse, timing);
            const auto report = realization_report(channel, coeffs, pulse);
            if (re_format == "json") {
                emit(report.dump(2) + "\n", re_out, out);
            } else {
                std::ostringstream os;
                os << "quantity,value\n";
                for (Eigen::Index n = 0; n < channel.size(); ++n) {
                    os << "gamma_" << n << "_re," << format_double(channel.gains(n).real()) << '\n';
                    os << "gamma_" << n << "_im," << format_double(channel.gains(n).imag()) << '\n';
                    os << "tau_" << n << ',' << format_double(channel.delays(n)) << '\n';
                }
                os << "tau_hat," << format_double(coeffs.tau_hat) << '\n';
                os << "h_o_re," << format_double(coeffs.h_o.real()) << '\n';
                os << "h_o_im," << format_double(coeffs.h_o.imag()) << '\n';
                os << "eta_o," << format_double(coeffs.eta_o) << '\n';
                os << "sir," << format_double(closed_form_sir(coeffs, pulse)) << '\n';
                emit(os.str(), re_out, out);
            }
            if (!re_dump.empty()) {
                WaveformConfig wave;
                wave.frame_len = re_frame;
                const auto frame = draw_symbols(Constellation{}, re_frame, rng);
                emit(waveform_csv(synth_received(frame, channel, pulse, 1.0, wave)), re_dump, out);
            }
            return kExitOk;
        }
        if (sir_sweep->parsed())
            return run_sweep("sir-sweep", sir_flags, SweepConfig{}, out, err);
        if (n_sweep->parsed()) {
            SweepConfig defaults;
            defaults.n_paths = {2, 5, 10, 20, 30};
            defaults.delay_spread_percents = {60};
            return run_sweep("n-sweep", n_flags, defaults, out, err);
        }
        if (validate->parsed()) {
            const auto results = run_validation(v_opts);
            emit(format_report(results), v_out, out);
            for (const auto& r : results)
                if (!r.passed)
                    return kExitValidationFailed;
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace mediumband
