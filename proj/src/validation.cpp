#include "mediumband/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>

#include "mediumband/experiments.hpp"
#include "mediumband/mediumband_model.hpp"
#include "mediumband/multipath.hpp"
#include "mediumband/output.hpp"
#include "mediumband/timing_sync.hpp"
#include "mediumband/waveform_oracle.hpp"

namespace mediumband {

namespace {

constexpr double kBeta = 0.8;
constexpr int kPaths = 5;
constexpr double kSpread = 0.6;

std::string printf_string(const char* fmt, ...)
{
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

RandomStream check_stream(const ValidationOptions& opts, int check)
{
    return RandomStream(opts.seed).child(static_cast<std::uint64_t>(check));
}

ChannelConfig default_channel()
{
    ChannelConfig c;
    c.num_paths = kPaths;
    c.delay_spread = kSpread;
    return c;
}

CheckResult timed(const std::function<CheckResult()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = body();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

double to_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

} // namespace

CheckResult check_closed_form_vs_oracle(const ValidationOptions& opts)
{
    return timed([&] {
        const int realizations = opts.quick ? 10 : 100;
        const PulseShape pulse(kBeta);
        WaveformConfig wave;
        wave.frame_len = 100000;
        const RandomStream stream = check_stream(opts, 1);

        std::vector<double> deviation(realizations);
        parallel_for(realizations, resolve_workers(opts.workers), [&](int i) {
            RandomStream rng = stream.child(static_cast<std::uint64_t>(i));
            const auto realization = sample_realization(default_channel(), rng);
            const auto coeffs = search_tau_hat(realization, pulse);
            const auto frame = draw_symbols(Constellation{}, wave.frame_len, rng);
            const double closed = closed_form_sir(coeffs, pulse);
            const double empirical = empirical_sir(frame, realization, coeffs, pulse, 1.0, wave);
            deviation[i] = std::abs(to_db(empirical) - to_db(closed));
        });
        const double worst = *std::max_element(deviation.begin(), deviation.end());
        return CheckResult{"AC1", "closed-form SIR matches waveform-oracle SIR within 0.2 dB", worst <= 0.2,
                           printf_string("%d realizations, max |delta| = %.4f dB", realizations, worst)};
    });
}

CheckResult check_power_identity(const ValidationOptions& opts)
{
    return timed([&] {
        WaveformConfig wave;
        wave.frame_len = 100000;
        RandomStream rng = check_stream(opts, 2);
        double worst = 0.0;
        for (auto kind : {ConstellationKind::BPSK, ConstellationKind::PAM4}) {
            for (double beta : {0.25, 0.5, 0.8}) {
                const PulseShape pulse(beta);
                const auto frame = draw_symbols(Constellation{kind}, wave.frame_len, rng);
                const auto s = synth_baseband(frame, pulse, 0.0, wave);
                const double power = mean_power(s, guarded_window(wave, 0.0, 0.0));
                worst = std::max(worst, std::abs(power / pulse.signal_power() - 1.0));
            }
        }
        return CheckResult{"AC2", "guarded waveform power equals 1 - beta/4 within 1%", worst < 0.01,
                           printf_string("BPSK+PAM4 x beta {0.25,0.5,0.8}, max rel error = %.3e", worst)};
    });
}

CheckResult check_autocorr_identity(const ValidationOptions& opts)
{
    return timed([&] {
        const int points = opts.quick ? 10 : 50;
        const std::vector<double> betas = opts.quick ? std::vector<double>{0.8} : std::vector<double>{0.25, 0.5, 0.8};
        WaveformConfig wave;
        wave.frame_len = 100000;
        const RandomStream stream = check_stream(opts, 3);

        double worst_fit = 0.0;
        for (std::size_t b = 0; b < betas.size(); ++b) {
            const PulseShape pulse(betas[b]);
            std::vector<double> err(points);
            parallel_for(points, resolve_workers(opts.workers), [&](int i) {
                const double tau = -3.0 + 6.0 * i / (points - 1);
                RandomStream rng = stream.child(b * 1000 + static_cast<std::uint64_t>(i));
                err[i] = std::abs(empirical_autocorr(pulse, Constellation{}, tau, wave, rng) - eval_autocorr(pulse, tau));
            });
            worst_fit = std::max(worst_fit, *std::max_element(err.begin(), err.end()));
        }
        double worst_peak = 0.0;
        for (double beta : {0.0, 0.25, 0.5, 0.8, 1.0}) {
            const PulseShape pulse(beta);
            worst_peak = std::max(worst_peak, std::abs(eval_autocorr(pulse, 0.0) - (1.0 - beta / 4.0)));
        }
        return CheckResult{"AC3", "closed-form R(tau) matches empirical autocorrelation; R(0) = 1 - beta/4",
                           worst_fit <= 1e-2 && worst_peak <= 1e-12,
                           printf_string("%d taus in [-3,3], max |R - R_emp| = %.3e; max |R(0) - (1-beta/4)| = %.1e",
                                         points, worst_fit, worst_peak)};
    });
}

CheckResult check_error_variance_optimality(const ValidationOptions& opts)
{
    return timed([&] {
        const int realizations = opts.quick ? 1000 : 10000;
        const int probes = 100;
        const PulseShape pulse(kBeta);
        const double e_s = 1.0;
        const double fd_step = 1e-4;
        RandomStream rng = check_stream(opts, 4);

        double worst_grad = 0.0;
        double worst_fd = 0.0;
        long violations = 0;
        for (int i = 0; i < realizations; ++i) {
            const auto realization = sample_realization(default_channel(), rng);
            const auto coeffs = search_tau_hat(realization, pulse);
            const Complex h = coeffs.h_o;
            const double t = coeffs.tau_hat;
            const Complex grad = error_variance_gradient(realization, h, t, pulse, e_s);
            worst_grad = std::max(worst_grad, std::abs(grad));

            const double j_ip = error_variance_J(realization, h + fd_step, t, pulse, e_s);
            const double j_im = error_variance_J(realization, h - fd_step, t, pulse, e_s);
            const double j_qp = error_variance_J(realization, h + Complex(0, fd_step), t, pulse, e_s);
            const double j_qm = error_variance_J(realization, h - Complex(0, fd_step), t, pulse, e_s);
            const Complex fd((j_ip - j_im) / (2 * fd_step), (j_qp - j_qm) / (2 * fd_step));
            worst_fd = std::max(worst_fd, std::abs(fd - grad));

            const double j_opt = error_variance_J(realization, h, t, pulse, e_s);
            for (int k = 0; k < probes; ++k) {
                const Complex delta = std::polar(1e-3 + rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
                if (error_variance_J(realization, h + delta, t, pulse, e_s) < j_opt)
                    ++violations;
            }
        }
        return CheckResult{"AC4", "gradient of J vanishes at h_o, matches finite differences, J convex about h_o",
                           worst_grad < 1e-10 && worst_fd <= 1e-6 && violations == 0,
                           printf_string("%d realizations: max |grad| = %.2e, max |fd - grad| = %.2e, %ld of %ld "
                                         "perturbations below J(h_o)",
                                         realizations, worst_grad, worst_fd, violations,
                                         static_cast<long>(realizations) * probes)};
    });
}

CheckResult check_orthogonality(const ValidationOptions& opts)
{
    return timed([&] {
        const int realizations = opts.quick ? 1000 : 10000;
        const int frames = opts.quick ? 3 : 10;
        const double e_s = 2.0;
        const PulseShape pulse(kBeta);
        RandomStream rng = check_stream(opts, 5);

        double worst_analytic = 0.0;
        for (int i = 0; i < realizations; ++i) {
            const auto realization = sample_realization(default_channel(), rng);
            const auto coeffs = search_tau_hat(realization, pulse);
            worst_analytic = std::max(
                worst_analytic, std::abs(cross_correlation(realization, coeffs.h_o, coeffs.tau_hat, pulse, e_s)) / e_s);
        }

        // Empirical cross term, pooled over independent frames: the pooled mean
        // must sit within 3 pooled standard errors of zero in each component.
        WaveformConfig wave;
        wave.frame_len = 100000;
        std::vector<OracleStatistics> stats(frames);
        const RandomStream stream = rng.child(1);
        parallel_for(frames, resolve_workers(opts.workers), [&](int i) {
            RandomStream local = stream.child(static_cast<std::uint64_t>(i));
            const auto realization = sample_realization(default_channel(), local);
            const auto coeffs = search_tau_hat(realization, pulse);
            const auto frame = draw_symbols(Constellation{}, wave.frame_len, local);
            stats[i] = measure_oracle(frame, realization, coeffs, pulse, e_s, wave);
        });
        Complex pooled(0.0, 0.0);
        double var_re = 0.0;
        double var_im = 0.0;
        double worst_z = 0.0;
        for (const auto& s : stats) {
            pooled += s.cross_term;
            var_re += s.cross_stderr_re * s.cross_stderr_re;
            var_im += s.cross_stderr_im * s.cross_stderr_im;
            worst_z = std::max({worst_z, std::abs(s.cross_term.real()) / s.cross_stderr_re,
                                std::abs(s.cross_term.imag()) / s.cross_stderr_im});
        }
        const double z_re = std::abs(pooled.real()) / std::sqrt(var_re);
        const double z_im = std::abs(pooled.imag()) / std::sqrt(var_im);
        return CheckResult{"AC5", "desired and interfering terms are uncorrelated at h_o",
                           worst_analytic <= 1e-12 && z_re <= 3.0 && z_im <= 3.0,
                           printf_string("analytic max |L|/E_s = %.2e over %d; empirical pooled z = (%.2f, %.2f) over "
                                         "%d frames, max per-frame |z| = %.2f",
                                         worst_analytic, realizations, z_re, z_im, frames, worst_z)};
    });
}

CheckResult check_narrowband_limit(const ValidationOptions& opts)
{
    return timed([&] {
        const int realizations = 1000;
        const PulseShape pulse(kBeta);
        RandomStream rng = check_stream(opts, 6);
        double worst_h = 0.0;
        double worst_eta = 0.0;
        int used = 0;
        for (int i = 0; i < realizations; ++i) {
            const auto drawn = sample_realization(default_channel(), rng);
            const double spread = realized_delay_spread(drawn);
            if (spread == 0.0)
                continue;
            const auto realization = scale_delays(drawn, 1e-4 / spread);
            const auto coeffs = search_tau_hat(realization, pulse);
            worst_h = std::max(worst_h, std::abs(coeffs.h_o - realization.gains.sum()));
            worst_eta = std::max(worst_eta, coeffs.eta_o);
            ++used;
        }
        return CheckResult{"AC6", "T_m = 1e-4 Ts gives h_o -> sum gamma_n and eta_o -> 0",
                           used > 0 && worst_h < 1e-4 && worst_eta < 1e-3,
                           printf_string("%d realizations: max |h_o - sum gamma| = %.2e, max eta_o = %.2e", used,
                                         worst_h, worst_eta)};
    });
}

CheckResult check_delay_spread_sweep(const ValidationOptions& opts)
{
    return timed([&] {
        SweepConfig cfg;
        cfg.beta = kBeta;
        cfg.n_paths = {kPaths};
        cfg.delay_spread_percents = {10, 20, 30, 40, 50, 60, 70, 80, 90};
        cfg.trials = 2000; // not reduced in quick mode: fewer trials make the sweep steps noise-dominated
        cfg.min_trials = cfg.trials;
        cfg.master_seed = RandomStream(opts.seed).child(7).seed();
        cfg.workers = opts.workers;

        cfg.profile.kind = ProfileKind::Uniform;
        const auto uniform = run_delay_spread_sweep(cfg);
        cfg.profile.kind = ProfileKind::Exponential;
        const auto exponential = run_delay_spread_sweep(cfg);

        bool monotone = true;
        double worst_rise = -1e300; // largest SIR increase in units of the allowed 2 standard errors
        for (const auto* curve : {&uniform, &exponential}) {
            for (std::size_t k = 0; k + 1 < curve->size(); ++k) {
                const auto& a = (*curve)[k];
                const auto& b = (*curve)[k + 1];
                const double allowed = 2.0 * std::hypot(a.sir_db_stderr, b.sir_db_stderr);
                monotone = monotone && (b.sir_db - a.sir_db <= allowed);
                worst_rise = std::max(worst_rise, (b.sir_db - a.sir_db) / allowed);
            }
        }
        bool ordered = true;
        double min_gap = 1e300;
        for (std::size_t k = 0; k < uniform.size(); ++k) {
            if (uniform[k].point < 30.0)
                continue;
            ordered = ordered && uniform[k].sir_db <= exponential[k].sir_db;
            min_gap = std::min(min_gap, exponential[k].sir_db - uniform[k].sir_db);
        }
        std::string curve_text;
        for (std::size_t k = 0; k < uniform.size(); ++k)
            curve_text += printf_string("%s%g%%:%.2f/%.2f", k ? " " : "", uniform[k].point, uniform[k].sir_db,
                                        exponential[k].sir_db);
        return CheckResult{"AC7", "SIR non-increasing in delay spread; uniform <= exponential from 30%",
                           monotone && ordered,
                           printf_string("%d trials/point, max step rise = %.2f x (2 s.e.), min exp-uni gap = %.2f "
                                         "dB; uni/exp dB: ",
                                         cfg.trials, worst_rise, min_gap)
                               + curve_text};
    });
}

CheckResult check_n_sweep(const ValidationOptions& opts)
{
    return timed([&] {
        SweepConfig cfg;
        cfg.beta = kBeta;
        cfg.n_paths = {2, 5, 10, 20, 30};
        cfg.delay_spread_percents = {60};
        cfg.profile.kind = ProfileKind::Uniform;
        cfg.trials = 2000; // not reduced in quick mode: fewer trials make the sweep steps noise-dominated
        cfg.min_trials = cfg.trials;
        cfg.master_seed = RandomStream(opts.seed).child(8).seed();
        cfg.workers = opts.workers;
        const auto results = run_n_sweep(cfg);

        auto sir_at = [&](int n) {
            for (const auto& r : results)
                if (r.point == n)
                    return r.sir_db;
            return std::nan("");
        };
        const double gain = sir_at(20) - sir_at(2);
        const double tail = sir_at(30) - sir_at(20);
        std::string curve_text;
        for (std::size_t k = 0; k < results.size(); ++k)
            curve_text += printf_string("%sN=%g:%.2f", k ? " " : "", results[k].point, results[k].sir_db);
        return CheckResult{"AC8", "SIR grows with N and saturates (uniform profile, 60%)",
                           gain > 0.0 && tail < cfg.saturation_db,
                           printf_string("%d trials/point, SIR(20)-SIR(2) = %.2f dB, SIR(30)-SIR(20) = %.2f dB; ",
                                         cfg.trials, gain, tail)
                               + curve_text};
    });
}

CheckResult check_parallel_determinism(const ValidationOptions& opts)
{
    return timed([&] {
        SweepConfig cfg;
        cfg.beta = kBeta;
        cfg.n_paths = {kPaths};
        cfg.delay_spread_percents = opts.quick ? std::vector<double>{20, 60, 90}
                                               : std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90};
        cfg.trials = opts.quick ? 200 : 500;
        cfg.master_seed = RandomStream(opts.seed).child(9).seed();

        cfg.workers = 1;
        const std::string serial = sweep_csv(run_delay_spread_sweep(cfg));
        cfg.workers = 8;
        const std::string parallel = sweep_csv(run_delay_spread_sweep(cfg));
        return CheckResult{"AC9", "identical seed gives byte-identical CSV with 1 and 8 workers", serial == parallel,
                           printf_string("%zu points, %zu bytes, %s", cfg.delay_spread_percents.size(), serial.size(),
                                         serial == parallel ? "identical" : "DIFFERENT")};
    });
}

std::vector<CheckResult> run_validation(const ValidationOptions& opts)
{
    return {check_closed_form_vs_oracle(opts), check_power_identity(opts),      check_autocorr_identity(opts),
            check_error_variance_optimality(opts), check_orthogonality(opts),   check_narrowband_limit(opts),
            check_delay_spread_sweep(opts),     check_n_sweep(opts),            check_parallel_determinism(opts)};
}

std::string format_report(const std::vector<CheckResult>& results)
{
    std::string out;
    int failed = 0;
    for (const auto& r : results) {
        out += (r.passed ? "PASS  " : "FAIL  ") + r.id + "  " + r.title + "\n      " + r.detail + "\n";
        failed += r.passed ? 0 : 1;
    }
    out += printf_string("%zu checks, %d failed\n", results.size(), failed);
    return out;
}

} // namespace mediumband
