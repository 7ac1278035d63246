#pragma once

#include "mediumband/multipath.hpp"
#include "mediumband/pulse_shaping.hpp"
#include "mediumband/types.hpp"

namespace mediumband {

/// Compact summary of one realization: r(t) = sqrt(E_s) h_o s(t - tau_hat)
/// + sqrt(E_s) eta_o u(t), with u(t) zero mean, unit variance and
/// uncorrelated with the desired term.
struct FadingCoefficients {
    Complex h_o{0.0, 0.0};
    double eta_o = 0.0;
    double tau_hat = 0.0;
};

struct LinkBudget {
    double symbol_energy = 1.0;  ///< E_s, linear
    double noise_variance = 0.0; ///< sigma^2, linear, same unit as E_s

    void validate() const;
};

/// sum_n gamma_n R(tau_n - tau_hat).
Complex desired_projection(const ChannelRealization& realization, double tau_hat,
                           const PulseShape& pulse);

/// Total received power per unit E_s: sum_n sum_m gamma_n conj(gamma_m) R(tau_n - tau_m).
double received_power(const ChannelRealization& realization, const PulseShape& pulse);

/// Off-diagonal part of received_power(): sum_n sum_{m != n} gamma_n conj(gamma_m) R(tau_n - tau_m).
/// Real because the terms pair up as conjugates.
double path_cross_power(const ChannelRealization& realization, const PulseShape& pulse);

/// Optimal desired-signal coefficient at timing tau_hat:
/// h_o = sum_n gamma_n R(tau_n - tau_hat) / (1 - beta/4).
Complex compute_h_o(const ChannelRealization& realization, double tau_hat, const PulseShape& pulse);

/// Interference coefficient for an optimal h_o:
/// eta_o^2 = (1 - beta/4)(sum |gamma_n|^2 - |h_o|^2) + path_cross_power().
///
/// When h_o is the optimum at tau_hat the radicand is evaluated in residual
/// form, sum_nm gamma_n conj(gamma_m) [R(tau_n - tau_m) - R(tau_n - tau_hat)
/// R(tau_m - tau_hat) / (1 - beta/4)], which stays accurate near the narrowband
/// limit. The radicand is clamped to 0 when it is negative by less than 1e-9 (rounding
/// near the narrowband limit); anything more negative throws
/// NumericalInconsistency, since it means h_o was not the optimum.
double compute_eta_o(const ChannelRealization& realization, Complex h_o, double tau_hat,
                     const PulseShape& pulse);

/// h_o and eta_o at the given timing.
FadingCoefficients characterize(const ChannelRealization& realization, double tau_hat,
                                const PulseShape& pulse);

/// Conditional error variance J(h) = E{|r(t) - sqrt(E_s) h s(t - tau_hat)|^2 | gains}
/// for any trial coefficient h.
double error_variance_J(const ChannelRealization& realization, Complex h, double tau_hat,
                        const PulseShape& pulse, double e_s);

/// Exact gradient of error_variance_J() with respect to (Re h, Im h), packed as
/// dJ/dh_I + j dJ/dh_Q = 2 E_s [(1 - beta/4) h - sum_n gamma_n R(tau_n - tau_hat)].
Complex error_variance_gradient(const ChannelRealization& realization, Complex h, double tau_hat,
                                const PulseShape& pulse, double e_s);

/// Correlation between the desired term and the residual for trial h:
/// E_s [conj(h) sum_n gamma_n R(tau_n - tau_hat) - |h|^2 (1 - beta/4)]. Zero at h_o.
Complex cross_correlation(const ChannelRealization& realization, Complex h, double tau_hat,
                          const PulseShape& pulse, double e_s);

/// E_s |h_o|^2 (1 - beta/4) / (E_s eta_o^2 + sigma^2). Returns +infinity when
/// the denominator is exactly zero.
double sinr(const FadingCoefficients& coeffs, const LinkBudget& budget, const PulseShape& pulse);

/// Interference-limited SIR |h_o|^2 (1 - beta/4) / eta_o^2 (+infinity when eta_o = 0).
double closed_form_sir(const FadingCoefficients& coeffs, const PulseShape& pulse);

/// Thermal noise power in mW for a spectral density in dBm/Hz over a noise
/// bandwidth in Hz. Throws std::invalid_argument for a non-positive bandwidth.
double noise_variance_from_spectral_density(double n0_dbm_per_hz, double noise_bandwidth_hz);

} // namespace mediumband
