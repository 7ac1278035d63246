#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "mediumband/mediumband_model.hpp"
#include "mediumband/random.hpp"

namespace mediumband {

enum class ConstellationKind { BPSK, PAM4 };

/// Real, zero-mean, unit mean-square amplitude set.
struct Constellation {
    ConstellationKind kind = ConstellationKind::BPSK;

    /// BPSK: {-1, +1}; PAM4: {-3, -1, 1, 3} / sqrt(5).
    std::span<const double> levels() const noexcept;

    friend bool operator==(const Constellation&, const Constellation&) = default;
};

std::string to_string(ConstellationKind kind);
ConstellationKind parse_constellation(std::string_view name);

struct WaveformConfig {
    int oversampling = 16;     ///< samples per symbol, >= 4
    int frame_len = 10000;     ///< symbols, >= 100
    int pulse_truncation = 8;  ///< one-sided pulse support in symbols, >= 4
    int edge_guard = 8;        ///< symbols dropped from averages at each frame edge

    void validate() const;
};

struct SymbolFrame {
    RealVector symbols;
    Constellation constellation;
    std::uint64_t seed = 0;
};

/// Uniformly sampled signal; sample i sits at t = i / oversampling symbol periods.
template <typename Scalar>
struct SampledSignal {
    int oversampling = 1;
    Vector<Scalar> samples;

    double time(Eigen::Index i) const { return static_cast<double>(i) / oversampling; }
};

/// Half-open sample range [begin, end) spanning a whole number of symbols.
struct SampleWindow {
    Eigen::Index begin = 0;
    Eigen::Index end = 0;

    Eigen::Index size() const noexcept { return end - begin; }
};

/// Samples whose truncated pulse sums are complete for every shift in
/// [min_shift, max_shift], after dropping edge_guard symbols at both ends.
SampleWindow guarded_window(const WaveformConfig& cfg, double min_shift, double max_shift);

/// K i.i.d. uniform draws over the constellation's levels; the frame records rng.seed().
SymbolFrame draw_symbols(const Constellation& constellation, int k, RandomStream& rng);

/// s(t - delay) on the grid of frame.symbols.size() * oversampling samples,
/// by direct summation of truncated pulses evaluated at the exact shifted
/// arguments.
SampledSignal<double> synth_baseband(const SymbolFrame& frame, const PulseShape& pulse, double delay,
                                     const WaveformConfig& cfg);

/// sqrt(E_s) sum_n gamma_n s(t - tau_n) on the same grid.
SampledSignal<Complex> synth_received(const SymbolFrame& frame, const ChannelRealization& realization,
                                      const PulseShape& pulse, double e_s, const WaveformConfig& cfg);

/// Mean |x|^2 over the window.
template <typename Scalar>
double mean_power(const SampledSignal<Scalar>& signal, const SampleWindow& window)
{
    return signal.samples.segment(window.begin, window.size()).cwiseAbs2().mean();
}

/// Guarded time average of s(t) s(t + tau) for a fresh frame of cfg.frame_len symbols.
double empirical_autocorr(const PulseShape& pulse, const Constellation& constellation, double tau,
                          const WaveformConfig& cfg, RandomStream& rng);

/// All oracle statistics of one (frame, realization, coefficients) triple,
/// from a single synthesis pass. d(t) = sqrt(E_s) h_o s(t - tau_hat),
/// e(t) = r(t) - d(t).
struct OracleStatistics {
    double desired_power = 0.0;    ///< mean |d|^2
    double error_power = 0.0;      ///< mean |e|^2
    Complex cross_term{0.0, 0.0};  ///< mean conj(d) e
    double cross_stderr_re = 0.0;  ///< batch-means standard error of Re(cross_term)
    double cross_stderr_im = 0.0;
    Complex fitted_h{0.0, 0.0};    ///< least-squares coefficient of r on sqrt(E_s) s(t - tau_hat)
};

OracleStatistics measure_oracle(const SymbolFrame& frame, const ChannelRealization& realization,
                                const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                                const WaveformConfig& cfg);

/// Guarded mean of |r(t) - sqrt(E_s) h_o s(t - tau_hat)|^2; estimates E_s eta_o^2.
double empirical_error_variance(const SymbolFrame& frame, const ChannelRealization& realization,
                                const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                                const WaveformConfig& cfg);

/// Desired power over error power; +infinity when the error power is exactly zero.
double empirical_sir(const SymbolFrame& frame, const ChannelRealization& realization,
                     const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                     const WaveformConfig& cfg);

/// Writes `t_over_Ts,re,im` rows for every sample.
std::string waveform_csv(const SampledSignal<Complex>& signal);

} // namespace mediumband
