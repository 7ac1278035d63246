#pragma once

#include <optional>

#include "mediumband/mediumband_model.hpp"

namespace mediumband {

struct TimingSearchConfig {
    double grid_step = 1.0 / 200.0;    ///< in symbol periods
    std::optional<double> search_lo;   ///< default 0
    std::optional<double> search_hi;   ///< default: the realization's configured T_m
    bool refine = true;                ///< golden-section pass around the grid winner
    bool widen = false;                ///< extend the range by half a symbol on each side

    void validate() const;
    friend bool operator==(const TimingSearchConfig&, const TimingSearchConfig&) = default;
};

/// |h_o(tau)|^2, the search objective.
double desired_gain(const ChannelRealization& realization, const PulseShape& pulse, double tau);

/// Exhaustive search for the synchronization instant.
///
/// Maximizes |h_o(tau)|^2 over lo, lo + step, ..., hi (hi always included).
/// The eta_o^2 cross term does not depend on tau, so this is the same argmax as
/// minimizing eta_o^2 or maximizing the per-realization SIR; debug builds check
/// that on every call. Ties go to the smallest tau. With refine set, a
/// golden-section search over the two cells adjacent to the winner is kept only
/// if it improves the objective.
///
/// Throws std::invalid_argument for an empty range or non-positive step.
FadingCoefficients search_tau_hat(const ChannelRealization& realization, const PulseShape& pulse,
                                  const TimingSearchConfig& cfg = {});

} // namespace mediumband
