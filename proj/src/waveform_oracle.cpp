#include "mediumband/waveform_oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mediumband {

namespace {

const std::array<double, 2> kBpskLevels{-1.0, 1.0};
const std::array<double, 4> kPam4Levels{-3.0 / std::sqrt(5.0), -1.0 / std::sqrt(5.0),
                                        1.0 / std::sqrt(5.0), 3.0 / std::sqrt(5.0)};

constexpr int kBatchSymbols = 100;

// Polyphase table: taps(p, j - first_lag) = pulse_at(j + p / M), so that
// sample q*M + p receives sum_j taps(p, j) * I[q - j].
template <typename Scalar>
struct PolyphaseTable {
    long first_lag = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> taps;
};

template <typename Scalar, typename PulseAt>
PolyphaseTable<Scalar> make_table(int oversampling, int truncation, double min_shift, double max_shift,
                                  PulseAt pulse_at)
{
    PolyphaseTable<Scalar> table;
    table.first_lag = static_cast<long>(std::floor(min_shift - truncation)) - 1;
    const long last_lag = static_cast<long>(std::ceil(max_shift + truncation)) + 1;
    table.taps.resize(oversampling, last_lag - table.first_lag + 1);
    for (int p = 0; p < oversampling; ++p)
        for (long j = table.first_lag; j <= last_lag; ++j)
            table.taps(p, j - table.first_lag) =
                pulse_at(static_cast<double>(j) + static_cast<double>(p) / oversampling);
    return table;
}

template <typename Scalar>
SampledSignal<Scalar> run_table(const RealVector& symbols, int oversampling, const PolyphaseTable<Scalar>& table)
{
    const Eigen::Index k = symbols.size();
    const Eigen::Index lags = table.taps.cols();
    SampledSignal<Scalar> out;
    out.oversampling = oversampling;
    out.samples.setZero(k * oversampling);
    for (Eigen::Index q = 0; q < k; ++q) {
        // Symbols q - j for j in [first_lag, first_lag + lags) that exist.
        const Eigen::Index j_begin = std::max<Eigen::Index>(0, q - (k - 1) - table.first_lag);
        const Eigen::Index j_end = std::min<Eigen::Index>(lags, q - table.first_lag + 1);
        for (int p = 0; p < oversampling; ++p) {
            Scalar acc(0);
            for (Eigen::Index c = j_begin; c < j_end; ++c)
                acc += table.taps(p, c) * symbols(q - table.first_lag - c);
            out.samples(q * oversampling + p) = acc;
        }
    }
    return out;
}

double truncated_pulse(const PulseShape& pulse, double x, int truncation)
{
    return std::abs(x) <= truncation ? eval_pulse(pulse, x * pulse.symbol_period()) : 0.0;
}

SampledSignal<double> synth_shifted(const RealVector& symbols, const PulseShape& pulse, double delay,
                                    const WaveformConfig& cfg)
{
    const int trunc = cfg.pulse_truncation;
    auto table = make_table<double>(cfg.oversampling, trunc, delay, delay,
                                    [&](double x) { return truncated_pulse(pulse, x - delay, trunc); });
    return run_table(symbols, cfg.oversampling, table);
}

double batch_stderr(const std::vector<double>& batch_means)
{
    const auto n = static_cast<double>(batch_means.size());
    if (n < 2)
        return std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (double v : batch_means)
        mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : batch_means)
        ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0) / n);
}

} // namespace

std::span<const double> Constellation::levels() const noexcept
{
    if (kind == ConstellationKind::BPSK)
        return kBpskLevels;
    return kPam4Levels;
}

std::string to_string(ConstellationKind kind)
{
    return kind == ConstellationKind::BPSK ? "bpsk" : "pam4";
}

ConstellationKind parse_constellation(std::string_view name)
{
    if (name == "bpsk")
        return ConstellationKind::BPSK;
    if (name == "pam4")
        return ConstellationKind::PAM4;
    throw std::invalid_argument("unknown constellation '" + std::string(name) + "' (expected bpsk or pam4)");
}

void WaveformConfig::validate() const
{
    if (oversampling < 4)
        throw std::invalid_argument("oversampling must be >= 4");
    if (frame_len < 100)
        throw std::invalid_argument("frame length must be >= 100 symbols");
    if (pulse_truncation < 4)
        throw std::invalid_argument("pulse truncation must be >= 4 symbols");
    if (edge_guard < 0)
        throw std::invalid_argument("edge guard must be >= 0");
}

SampleWindow guarded_window(const WaveformConfig& cfg, double min_shift, double max_shift)
{
    const auto lo = cfg.edge_guard + static_cast<long>(std::ceil(std::max(max_shift, 0.0)));
    const auto hi = cfg.frame_len - cfg.edge_guard - 1 - static_cast<long>(std::ceil(std::max(-min_shift, 0.0)));
    if (hi <= lo)
        throw std::invalid_argument("frame too short for the requested guard and shifts");
    return {lo * cfg.oversampling, hi * cfg.oversampling};
}

SymbolFrame draw_symbols(const Constellation& constellation, int k, RandomStream& rng)
{
    if (k < 1)
        throw std::invalid_argument("frame must contain at least one symbol");
    const auto levels = constellation.levels();
    SymbolFrame frame{RealVector(k), constellation, rng.seed()};
    for (int i = 0; i < k; ++i)
        frame.symbols(i) = levels[rng.index(levels.size())];
    return frame;
}

SampledSignal<double> synth_baseband(const SymbolFrame& frame, const PulseShape& pulse, double delay,
                                     const WaveformConfig& cfg)
{
    cfg.validate();
    return synth_shifted(frame.symbols, pulse, delay / pulse.symbol_period(), cfg);
}

SampledSignal<Complex> synth_received(const SymbolFrame& frame, const ChannelRealization& realization,
                                      const PulseShape& pulse, double e_s, const WaveformConfig& cfg)
{
    cfg.validate();
    const int trunc = cfg.pulse_truncation;
    const double scale = std::sqrt(e_s);
    const RealVector delays = realization.delays / pulse.symbol_period();
    auto table = make_table<Complex>(cfg.oversampling, trunc, delays.minCoeff(), delays.maxCoeff(),
                                     [&](double x) {
                                         Complex acc(0.0, 0.0);
                                         for (Eigen::Index n = 0; n < delays.size(); ++n)
                                             acc += realization.gains(n) * truncated_pulse(pulse, x - delays(n), trunc);
                                         return scale * acc;
                                     });
    return run_table(frame.symbols, cfg.oversampling, table);
}

double empirical_autocorr(const PulseShape& pulse, const Constellation& constellation, double tau,
                          const WaveformConfig& cfg, RandomStream& rng)
{
    cfg.validate();
    const SymbolFrame frame = draw_symbols(constellation, cfg.frame_len, rng);
    const double lag = tau / pulse.symbol_period();
    const auto now = synth_shifted(frame.symbols, pulse, 0.0, cfg);
    const auto ahead = synth_shifted(frame.symbols, pulse, -lag, cfg);
    const SampleWindow w = guarded_window(cfg, std::min(0.0, -lag), std::max(0.0, -lag));
    return now.samples.segment(w.begin, w.size()).dot(ahead.samples.segment(w.begin, w.size()))
           / static_cast<double>(w.size());
}

OracleStatistics measure_oracle(const SymbolFrame& frame, const ChannelRealization& realization,
                                const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                                const WaveformConfig& cfg)
{
    cfg.validate();
    const int trunc = cfg.pulse_truncation;
    const double scale = std::sqrt(e_s);
    const double tau_hat = coeffs.tau_hat / pulse.symbol_period();
    const RealVector delays = realization.delays / pulse.symbol_period();
    const double lo = std::min(delays.minCoeff(), tau_hat);
    const double hi = std::max(delays.maxCoeff(), tau_hat);

    // The error gets its own taps so r and d cancel per tap, not per sample.
    auto error_table = make_table<Complex>(cfg.oversampling, trunc, lo, hi, [&](double x) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index n = 0; n < delays.size(); ++n)
            acc += realization.gains(n) * truncated_pulse(pulse, x - delays(n), trunc);
        return scale * (acc - coeffs.h_o * truncated_pulse(pulse, x - tau_hat, trunc));
    });
    const auto error = run_table(frame.symbols, cfg.oversampling, error_table);
    const auto reference = synth_shifted(frame.symbols, pulse, tau_hat, cfg);
    const SampleWindow w = guarded_window(cfg, lo, hi);

    const RealVector s = reference.samples.segment(w.begin, w.size());
    const ComplexVector e = error.samples.segment(w.begin, w.size());
    const ComplexVector d = (scale * coeffs.h_o) * s.cast<Complex>();
    const ComplexVector cross = d.conjugate().cwiseProduct(e);
    const auto n = static_cast<double>(w.size());

    OracleStatistics stats;
    stats.desired_power = d.squaredNorm() / n;
    stats.error_power = e.squaredNorm() / n;
    stats.cross_term = cross.sum() / n;
    // Regression of r = d + e on sqrt(E_s) s.
    stats.fitted_h = coeffs.h_o + s.cast<Complex>().dot(e) / (scale * s.squaredNorm());

    const Eigen::Index batch = static_cast<Eigen::Index>(kBatchSymbols) * cfg.oversampling;
    std::vector<double> re_means;
    std::vector<double> im_means;
    for (Eigen::Index b = 0; b + batch <= cross.size(); b += batch) {
        const Complex m = cross.segment(b, batch).mean();
        re_means.push_back(m.real());
        im_means.push_back(m.imag());
    }
    stats.cross_stderr_re = batch_stderr(re_means);
    stats.cross_stderr_im = batch_stderr(im_means);
    return stats;
}

double empirical_error_variance(const SymbolFrame& frame, const ChannelRealization& realization,
                                const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                                const WaveformConfig& cfg)
{
    return measure_oracle(frame, realization, coeffs, pulse, e_s, cfg).error_power;
}

double empirical_sir(const SymbolFrame& frame, const ChannelRealization& realization,
                     const FadingCoefficients& coeffs, const PulseShape& pulse, double e_s,
                     const WaveformConfig& cfg)
{
    const auto stats = measure_oracle(frame, realization, coeffs, pulse, e_s, cfg);
    if (stats.error_power == 0.0)
        return std::numeric_limits<double>::infinity();
    return stats.desired_power / stats.error_power;
}

std::string waveform_csv(const SampledSignal<Complex>& signal)
{
    std::ostringstream os;
    os.precision(17);
    os << "t_over_Ts,re,im\n";
    for (Eigen::Index i = 0; i < signal.samples.size(); ++i)
        os << signal.time(i) << ',' << signal.samples(i).real() << ',' << signal.samples(i).imag() << '\n';
    return os.str();
}

} // namespace mediumband
