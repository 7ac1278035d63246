#include "mediumband/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace mediumband {

namespace {

constexpr int kBatchTrials = 100;

struct TrialOutcome {
    double desired = 0.0;
    double interference = 0.0;
    double realized_tm = 0.0;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0; // sample variance
};

Moments moments(const std::vector<double>& x, std::size_t n)
{
    Moments m;
    for (std::size_t i = 0; i < n; ++i)
        m.mean += x[i];
    m.mean /= static_cast<double>(n);
    if (n > 1) {
        for (std::size_t i = 0; i < n; ++i)
            m.variance += (x[i] - m.mean) * (x[i] - m.mean);
        m.variance /= static_cast<double>(n - 1);
    }
    return m;
}

double prefix_mean(const std::vector<double>& x, std::size_t n)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += x[i];
    return sum / static_cast<double>(n);
}

bool stable(double now, double before, double tol)
{
    if (now == before)
        return true;
    return std::abs(now - before) <= tol * std::abs(now);
}

} // namespace

void SweepConfig::validate() const
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("beta must lie in [0, 1]");
    if (n_paths.empty())
        throw std::invalid_argument("at least one number of paths is required");
    for (int n : n_paths)
        if (n < 1)
            throw std::invalid_argument("number of paths must be >= 1");
    if (delay_spread_percents.empty())
        throw std::invalid_argument("at least one delay-spread percent is required");
    for (double p : delay_spread_percents)
        if (!(p > 0.0 && p <= 100.0))
            throw std::invalid_argument("delay-spread percents must lie in (0, 100]");
    if (trials < 100)
        throw std::invalid_argument("trials must be >= 100");
    if (min_trials < 1 || min_trials > trials)
        throw std::invalid_argument("min_trials must lie in [1, trials]");
    if (!(convergence_rel_tol > 0.0))
        throw std::invalid_argument("convergence tolerance must be > 0");
    if (!(e_s > 0.0))
        throw std::invalid_argument("E_s must be > 0");
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("sigma2 must be >= 0");
    if (!(saturation_db > 0.0))
        throw std::invalid_argument("saturation threshold must be > 0 dB");
    if (workers < 0)
        throw std::invalid_argument("workers must be >= 0");
    profile.validate();
    timing.validate();
}

double aggregate_sir(std::span<const double> desired, std::span<const double> interference)
{
    if (desired.empty() || desired.size() != interference.size())
        throw std::invalid_argument("aggregate_sir needs equal-length, nonempty inputs");
    double d = 0.0;
    double i = 0.0;
    for (std::size_t k = 0; k < desired.size(); ++k) {
        d += desired[k];
        i += interference[k];
    }
    if (i == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(d / i);
}

int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("MEDIUMBAND_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0)
                return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, int workers, const std::function<void(int)>& body)
{
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < count; i += workers)
                        body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

SweepResult run_sweep_point(const SweepConfig& cfg, int n_paths, double percent, double point_label)
{
    const PulseShape pulse(cfg.beta);
    ChannelConfig channel;
    channel.num_paths = n_paths;
    channel.delay_spread = percent / 100.0;
    channel.profile = cfg.profile;
    channel.seed = cfg.master_seed;

    const int workers = resolve_workers(cfg.workers);
    const RandomStream master(cfg.master_seed);

    std::vector<double> desired(cfg.trials);
    std::vector<double> interference(cfg.trials);
    std::vector<double> realized(cfg.trials);

    int done = 0;
    bool converged = false;
    while (done < cfg.trials) {
        const int batch = std::min(kBatchTrials, cfg.trials - done);
        const int offset = done;
        parallel_for(batch, workers, [&](int k) {
            const int i = offset + k;
            RandomStream rng = master.child(static_cast<std::uint64_t>(i));
            const ChannelRealization realization = sample_realization(channel, rng);
            const FadingCoefficients coeffs = search_tau_hat(realization, pulse, cfg.timing);
            desired[i] = cfg.e_s * std::norm(coeffs.h_o) * pulse.signal_power();
            interference[i] = cfg.e_s * coeffs.eta_o * coeffs.eta_o;
            realized[i] = realized_delay_spread(realization);
        });
        done += batch;

        if (done >= cfg.min_trials && done >= 10) {
            const auto trailing = static_cast<std::size_t>(done - done / 10);
            const auto n = static_cast<std::size_t>(done);
            if (stable(prefix_mean(desired, n), prefix_mean(desired, trailing), cfg.convergence_rel_tol)
                && stable(prefix_mean(interference, n), prefix_mean(interference, trailing),
                          cfg.convergence_rel_tol)) {
                converged = true;
                break;
            }
        }
    }

    const auto n = static_cast<std::size_t>(done);
    const Moments d = moments(desired, n);
    const Moments i = moments(interference, n);
    double covariance = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        covariance += (desired[k] - d.mean) * (interference[k] - i.mean);
    covariance = n > 1 ? covariance / static_cast<double>(n - 1) : 0.0;

    SweepResult result;
    result.point = point_label;
    result.desired_mean = d.mean;
    result.interference_mean = i.mean;
    result.trials = done;
    result.stderr_desired = std::sqrt(d.variance / static_cast<double>(n));
    result.stderr_interference = std::sqrt(i.variance / static_cast<double>(n));
    result.realized_tm_mean = prefix_mean(realized, n);
    result.converged = converged;

    const double denominator = i.mean + cfg.sigma2;
    if (denominator == 0.0) {
        result.sir_db = std::numeric_limits<double>::infinity();
        result.sir_db_stderr = 0.0;
    } else {
        result.sir_db = 10.0 * std::log10(d.mean / denominator);
        const double rel = d.variance / (d.mean * d.mean) + i.variance / (denominator * denominator)
                           - 2.0 * covariance / (d.mean * denominator);
        result.sir_db_stderr = 10.0 / std::log(10.0) * std::sqrt(std::max(rel, 0.0) / static_cast<double>(n));
    }
    return result;
}

std::vector<SweepResult> run_delay_spread_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    std::vector<SweepResult> out;
    out.reserve(cfg.delay_spread_percents.size());
    for (double p : cfg.delay_spread_percents)
        out.push_back(run_sweep_point(cfg, cfg.n_paths.front(), p, p));
    return out;
}

std::vector<SweepResult> run_n_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    std::vector<SweepResult> out;
    out.reserve(cfg.n_paths.size());
    for (int n : cfg.n_paths)
        out.push_back(run_sweep_point(cfg, n, cfg.delay_spread_percents.front(), n));
    return out;
}

} // namespace mediumband
