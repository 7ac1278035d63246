#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mediumband/multipath.hpp"
#include "mediumband/timing_sync.hpp"

namespace mediumband {

struct SweepConfig {
    double beta = 0.8;
    std::vector<int> n_paths{5};
    std::vector<double> delay_spread_percents{10, 20, 30, 40, 50, 60, 70, 80, 90};
    AmplitudeProfile profile;
    int trials = 2000;                 ///< cap on fading realizations per point
    int min_trials = 100;              ///< early stopping is not considered before this
    double convergence_rel_tol = 1e-3;
    std::uint64_t master_seed = 1;
    TimingSearchConfig timing;
    double e_s = 1.0;
    double sigma2 = 0.0;
    double saturation_db = 0.5;        ///< bound used by the N-sweep saturation check
    int workers = 0;                   ///< 0: MEDIUMBAND_THREADS or hardware concurrency

    void validate() const;
    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Aggregated statistics of one sweep point.
struct SweepResult {
    double point = 0.0;              ///< percent delay spread or number of paths
    double sir_db = 0.0;             ///< +inf when the interference mean is zero
    double desired_mean = 0.0;       ///< mean of E_s |h_o|^2 (1 - beta/4)
    double interference_mean = 0.0;  ///< mean of E_s eta_o^2
    int trials = 0;
    double stderr_desired = 0.0;
    double stderr_interference = 0.0;
    double realized_tm_mean = 0.0;
    double sir_db_stderr = 0.0;      ///< delta-method standard error of sir_db
    bool converged = false;
};

/// 10 log10(mean(desired) / mean(interference)), a ratio of averages.
/// +infinity when the interference mean is zero. Throws std::invalid_argument
/// for empty or unequal-length inputs.
double aggregate_sir(std::span<const double> desired, std::span<const double> interference);

/// SIR vs. percentage delay spread at n_paths.front().
std::vector<SweepResult> run_delay_spread_sweep(const SweepConfig& cfg);

/// SIR vs. number of paths at delay_spread_percents.front().
std::vector<SweepResult> run_n_sweep(const SweepConfig& cfg);

/// One Monte-Carlo point. Trial i draws its realization from the child stream
/// mix_seed(master_seed, i), so every point and every worker count sees the
/// same random numbers.
SweepResult run_sweep_point(const SweepConfig& cfg, int n_paths, double percent, double point_label);

/// Worker count: cfg.workers if positive, else MEDIUMBAND_THREADS, else
/// std::thread::hardware_concurrency().
int resolve_workers(int requested);

/// Calls body(i) for i in [0, count) on up to `workers` threads. body must
/// only write to slot i of its outputs.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

} // namespace mediumband
