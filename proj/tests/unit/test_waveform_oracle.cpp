#include <doctest.h>

#include <cmath>

#include "mediumband/timing_sync.hpp"
#include "mediumband/waveform_oracle.hpp"

using namespace mediumband;

namespace {

SymbolFrame impulse_frame(int k)
{
    SymbolFrame frame;
    frame.symbols = RealVector::Zero(k);
    frame.symbols(0) = 1.0;
    return frame;
}

ChannelRealization random_realization(std::uint64_t seed, int n = 5, double tm = 0.6)
{
    ChannelConfig cfg;
    cfg.num_paths = n;
    cfg.delay_spread = tm;
    cfg.seed = seed;
    return sample_realization(cfg);
}

double db(double x) { return 10.0 * std::log10(x); }

} // namespace

TEST_CASE("constellations are zero mean with unit mean square")
{
    for (auto kind : {ConstellationKind::BPSK, ConstellationKind::PAM4}) {
        const auto levels = Constellation{kind}.levels();
        double mean = 0.0, power = 0.0;
        for (double v : levels) {
            mean += v;
            power += v * v;
        }
        CHECK(std::abs(mean) < 1e-15);
        CHECK(power / levels.size() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(parse_constellation(to_string(ConstellationKind::PAM4)) == ConstellationKind::PAM4);
}

TEST_CASE("draw_symbols")
{
    RandomStream a(9), b(9);
    const auto bpsk = draw_symbols({ConstellationKind::BPSK}, 20000, a);
    CHECK((bpsk.symbols.array().abs() == 1.0).all());
    CHECK(std::abs(bpsk.symbols.mean()) < 4.0 / std::sqrt(20000.0));
    CHECK(bpsk.seed == 9);
    CHECK(draw_symbols({ConstellationKind::BPSK}, 20000, b).symbols == bpsk.symbols);

    RandomStream c(10);
    const auto pam = draw_symbols({ConstellationKind::PAM4}, 1000000, c);
    CHECK(pam.symbols.squaredNorm() / 1e6 == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("single symbol reproduces the pulse on the grid")
{
    const PulseShape pulse(0.8);
    WaveformConfig cfg;
    cfg.frame_len = 100;
    const auto s = synth_baseband(impulse_frame(100), pulse, 0.0, cfg);
    REQUIRE(s.samples.size() == 100 * cfg.oversampling);
    for (Eigen::Index i = 0; i < 7 * cfg.oversampling; ++i)
        CHECK(std::abs(s.samples(i) - eval_pulse(pulse, s.time(i))) < 1e-15);
}

TEST_CASE("a delay of one symbol shifts by exactly M samples")
{
    const PulseShape pulse(0.5);
    WaveformConfig cfg;
    cfg.frame_len = 200;
    RandomStream rng(3);
    const auto frame = draw_symbols({ConstellationKind::BPSK}, 200, rng);
    const auto s0 = synth_baseband(frame, pulse, 0.0, cfg);
    const auto s1 = synth_baseband(frame, pulse, 1.0, cfg);
    const Eigen::Index m = cfg.oversampling;
    const Eigen::Index n = s0.samples.size();
    CHECK((s1.samples.segment(m, n - m) - s0.samples.segment(0, n - m)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("guarded signal power is 1 - beta/4, and the signal is zero mean")
{
    WaveformConfig cfg;
    cfg.frame_len = 100000;
    for (double beta : {0.25, 0.8}) {
        const PulseShape pulse(beta);
        RandomStream rng(21);
        const auto frame = draw_symbols({ConstellationKind::BPSK}, cfg.frame_len, rng);
        const auto s = synth_baseband(frame, pulse, 0.0, cfg);
        const auto w = guarded_window(cfg, 0.0, 0.0);
        CHECK(w.size() % cfg.oversampling == 0);
        CHECK(mean_power(s, w) == doctest::Approx(1.0 - beta / 4.0).epsilon(1e-2));

        // Standard error of the mean from one-symbol-spaced samples, which are
        // uncorrelated by the Nyquist property.
        const auto seg = s.samples.segment(w.begin, w.size());
        const double mean = seg.mean();
        const double se = std::sqrt(1.0 - beta / 4.0) / std::sqrt(static_cast<double>(w.size() / cfg.oversampling));
        CHECK(std::abs(mean) < 3.0 * se);
    }
}

TEST_CASE("received signal identities")
{
    const PulseShape pulse(0.8);
    WaveformConfig cfg;
    cfg.frame_len = 300;
    RandomStream rng(4);
    const auto frame = draw_symbols({ConstellationKind::BPSK}, 300, rng);
    const auto s = synth_baseband(frame, pulse, 0.0, cfg);
    const double e_s = 2.0;

    ChannelRealization flat;
    flat.gains = ComplexVector::Constant(1, {1.0, 0.0});
    flat.delays = RealVector::Zero(1);
    const auto r1 = synth_received(frame, flat, pulse, e_s, cfg);
    CHECK((r1.samples - std::sqrt(e_s) * s.samples.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-14);

    ChannelRealization cancel;
    cancel.gains = ComplexVector(2);
    cancel.gains << Complex{0.6, 0.3}, Complex{-0.6, -0.3};
    cancel.delays = RealVector::Constant(2, 0.25);
    CHECK(synth_received(frame, cancel, pulse, e_s, cfg).samples.cwiseAbs().maxCoeff() < 1e-15);

    ChannelConfig cc;
    cc.num_paths = 6;
    cc.delay_spread = 0.0;
    cc.seed = 5;
    const auto nb = sample_realization(cc);
    const auto r2 = synth_received(frame, nb, pulse, e_s, cfg);
    const Complex sum = nb.gains.sum();
    CHECK((r2.samples - std::sqrt(e_s) * sum * s.samples.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("empirical autocorrelation follows R")
{
    const PulseShape pulse(0.8);
    WaveformConfig cfg;
    cfg.frame_len = 100000;
    RandomStream rng(6);
    CHECK(empirical_autocorr(pulse, {}, 0.0, cfg, rng) == doctest::Approx(0.8).epsilon(1e-2));
    CHECK(std::abs(empirical_autocorr(pulse, {}, 0.5, cfg, rng) - eval_autocorr(pulse, 0.5)) < 1e-2);
    CHECK(std::abs(empirical_autocorr(pulse, {}, 3.0, cfg, rng) - eval_autocorr(pulse, 3.0)) < 1e-2);
    CHECK(std::abs(empirical_autocorr(pulse, {}, 9.5, cfg, rng)) < 1e-2);
}

TEST_CASE("single path with ideal sync has no error")
{
    const PulseShape pulse(0.8);
    WaveformConfig cfg;
    cfg.frame_len = 1000;
    ChannelConfig cc;
    cc.num_paths = 1;
    cc.seed = 2;
    const auto r = sample_realization(cc);
    const auto coeffs = search_tau_hat(r, pulse);
    RandomStream rng(1);
    const auto frame = draw_symbols({ConstellationKind::BPSK}, cfg.frame_len, rng);
    CHECK(empirical_error_variance(frame, r, coeffs, pulse, 1.0, cfg) < 1e-28);
    const FadingCoefficients exact{r.gains(0), 0.0, 0.0};
    CHECK(std::isinf(empirical_sir(frame, r, exact, pulse, 1.0, cfg)));
}

TEST_CASE("oracle agrees with the closed form on random realizations")
{
    const PulseShape pulse(0.8);
    WaveformConfig cfg;
    cfg.frame_len = 100000;
    const double e_s = 1.5;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto r = random_realization(seed, 5, 0.2 * seed);
        const auto c = search_tau_hat(r, pulse);
        RandomStream rng(100 + seed);
        const auto frame = draw_symbols({ConstellationKind::BPSK}, cfg.frame_len, rng);
        const auto stats = measure_oracle(frame, r, c, pulse, e_s, cfg);

        CHECK(std::abs(stats.fitted_h - c.h_o) / std::abs(c.h_o) < 1e-3);
        CHECK(stats.error_power == doctest::Approx(e_s * c.eta_o * c.eta_o).epsilon(2e-2));
        CHECK(std::sqrt(empirical_error_variance(frame, r, c, pulse, e_s, cfg) / e_s) ==
              doctest::Approx(c.eta_o).epsilon(2e-2));
        CHECK(std::abs(db(empirical_sir(frame, r, c, pulse, e_s, cfg)) - db(closed_form_sir(c, pulse))) < 0.2);
        CHECK(std::abs(stats.cross_term.real()) < 4.0 * stats.cross_stderr_re);
        CHECK(std::abs(stats.cross_term.imag()) < 4.0 * stats.cross_stderr_im);

        FadingCoefficients off = c;
        off.h_o *= 1.1;
        CHECK(empirical_error_variance(frame, r, off, pulse, e_s, cfg) > stats.error_power);
    }
}

TEST_CASE("oracle SIR is insensitive to the sampling grid and pulse truncation")
{
    const PulseShape pulse(0.8);
    const auto r = random_realization(31, 5, 0.6);
    const auto c = search_tau_hat(r, pulse);
    WaveformConfig base;
    base.frame_len = 50000;
    RandomStream rng(8);
    const auto frame = draw_symbols({ConstellationKind::BPSK}, base.frame_len, rng);
    const double ref = db(empirical_sir(frame, r, c, pulse, 1.0, base));

    WaveformConfig fine = base;
    fine.oversampling *= 2;
    CHECK(std::abs(db(empirical_sir(frame, r, c, pulse, 1.0, fine)) - ref) < 0.05);

    WaveformConfig longer = base;
    longer.pulse_truncation *= 2;
    longer.edge_guard *= 2;
    CHECK(std::abs(db(empirical_sir(frame, r, c, pulse, 1.0, longer)) - ref) < 0.05);
}

TEST_CASE("waveform config validation and CSV")
{
    WaveformConfig cfg;
    cfg.oversampling = 2;
    CHECK_THROWS(cfg.validate());
    cfg = {};
    cfg.frame_len = 10;
    CHECK_THROWS(cfg.validate());

    SampledSignal<Complex> sig;
    sig.oversampling = 4;
    sig.samples = ComplexVector::Constant(3, {1.0, -0.5});
    const std::string csv = waveform_csv(sig);
    CHECK(csv.rfind("t_over_Ts,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
