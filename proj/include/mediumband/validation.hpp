#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mediumband {

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    bool quick = false; ///< reduced sample sizes; same thresholds
    int workers = 0;
};

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;   ///< measured worst cases; deterministic for a seed
    double seconds = 0.0; ///< wall time, never part of format_report()
};

// Oracle-equivalence and invariant checks. Each one runs the closed forms
// against the waveform oracle or against an exact identity at fixed
// tolerances; `quick` only shrinks sample counts.
CheckResult check_closed_form_vs_oracle(const ValidationOptions& opts);  // AC1
CheckResult check_power_identity(const ValidationOptions& opts);         // AC2
CheckResult check_autocorr_identity(const ValidationOptions& opts);      // AC3
CheckResult check_error_variance_optimality(const ValidationOptions& opts); // AC4
CheckResult check_orthogonality(const ValidationOptions& opts);          // AC5
CheckResult check_narrowband_limit(const ValidationOptions& opts);       // AC6
CheckResult check_delay_spread_sweep(const ValidationOptions& opts);     // AC7
CheckResult check_n_sweep(const ValidationOptions& opts);                // AC8
CheckResult check_parallel_determinism(const ValidationOptions& opts);   // AC9

std::vector<CheckResult> run_validation(const ValidationOptions& opts);

/// One `PASS|FAIL  id  title  detail` line per check plus a summary line.
std::string format_report(const std::vector<CheckResult>& results);

} // namespace mediumband
