#include "mediumband/timing_sync.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mediumband {

namespace {

double golden_section_max(const ChannelRealization& realization, const PulseShape& pulse,
                          double lo, double hi)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = desired_gain(realization, pulse, c);
    double fd = desired_gain(realization, pulse, d);
    while (b - a > 1e-10) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = desired_gain(realization, pulse, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = desired_gain(realization, pulse, d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

void TimingSearchConfig::validate() const
{
    if (!(grid_step > 0.0))
        throw std::invalid_argument("timing grid step must be > 0");
    if (search_lo && search_hi && *search_lo > *search_hi)
        throw std::invalid_argument("timing search range is empty (lo > hi)");
}

double desired_gain(const ChannelRealization& realization, const PulseShape& pulse, double tau)
{
    return std::norm(compute_h_o(realization, tau, pulse));
}

FadingCoefficients search_tau_hat(const ChannelRealization& realization, const PulseShape& pulse,
                                  const TimingSearchConfig& cfg)
{
    cfg.validate();
    double lo = cfg.search_lo.value_or(0.0);
    double hi = cfg.search_hi.value_or(realization.config.delay_spread);
    if (cfg.widen) {
        lo -= 0.5 * pulse.symbol_period();
        hi += 0.5 * pulse.symbol_period();
    }
    if (lo > hi)
        throw std::invalid_argument("timing search range is empty (lo > hi)");

    const auto cells = static_cast<long>(std::ceil((hi - lo) / cfg.grid_step - 1e-9));
    std::vector<double> grid;
    grid.reserve(cells + 1);
    for (long i = 0; i < cells; ++i)
        grid.push_back(lo + i * cfg.grid_step);
    grid.push_back(hi);

    std::vector<double> objective(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        objective[i] = desired_gain(realization, pulse, grid[i]);

    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (objective[i] > objective[best])
            best = i;

#ifndef NDEBUG
    {
        // eta_o^2(tau) = P - (1 - beta/4)|h_o(tau)|^2 with P independent of tau.
        double min_eta2 = std::numeric_limits<double>::infinity();
        double eta2_at_best = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double eta = compute_eta_o(realization, compute_h_o(realization, grid[i], pulse),
                                             grid[i], pulse);
            min_eta2 = std::min(min_eta2, eta * eta);
            if (i == best)
                eta2_at_best = eta * eta;
        }
        assert(eta2_at_best <= min_eta2 + 1e-12);
    }
#endif

    double tau_hat = grid[best];
    if (cfg.refine && grid.size() > 1) {
        const double a = grid[best == 0 ? 0 : best - 1];
        const double b = grid[std::min(best + 1, grid.size() - 1)];
        const double candidate = golden_section_max(realization, pulse, a, b);
        if (desired_gain(realization, pulse, candidate) > objective[best])
            tau_hat = candidate;
    }
    return characterize(realization, tau_hat, pulse);
}

} // namespace mediumband
