#include "mediumband/mediumband_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mediumband {

namespace {

constexpr double kClampWindow = 1e-9;

} // namespace

void LinkBudget::validate() const
{
    if (!(symbol_energy > 0.0))
        throw std::invalid_argument("symbol energy E_s must be > 0");
    if (!(noise_variance >= 0.0))
        throw std::invalid_argument("noise variance must be >= 0");
}

Complex desired_projection(const ChannelRealization& realization, double tau_hat,
                           const PulseShape& pulse)
{
    const RealVector r = autocorr_vector(pulse, realization.delays, tau_hat);
    return (realization.gains.array() * r.array().cast<Complex>()).sum();
}

double received_power(const ChannelRealization& realization, const PulseShape& pulse)
{
    const Eigen::MatrixXd r = autocorr_matrix(pulse, realization.delays);
    const ComplexVector& g = realization.gains;
    return (g.transpose() * r.cast<Complex>() * g.conjugate()).value().real();
}

double path_cross_power(const ChannelRealization& realization, const PulseShape& pulse)
{
    Eigen::MatrixXd r = autocorr_matrix(pulse, realization.delays);
    r.diagonal().setZero();
    const ComplexVector& g = realization.gains;
    return (g.transpose() * r.cast<Complex>() * g.conjugate()).value().real();
}

Complex compute_h_o(const ChannelRealization& realization, double tau_hat, const PulseShape& pulse)
{
    return desired_projection(realization, tau_hat, pulse) / pulse.signal_power();
}

namespace {

// Residual-kernel form of eta_o^2 for h = h_o(tau_hat):
// sum_nm gamma_n conj(gamma_m) [R(tau_n - tau_m) - p_n R(tau_m - tau_hat)],
// p_n = R(tau_n - tau_hat) / (1 - beta/4). Each kernel entry cancels on its own,
// so coincident delays give exactly zero instead of rounding noise.
double residual_power(const ChannelRealization& realization, double tau_hat, const PulseShape& pulse)
{
    const RealVector r_hat = autocorr_vector(pulse, realization.delays, tau_hat);
    const RealVector p = r_hat / pulse.signal_power();
    const Eigen::MatrixXd kernel = autocorr_matrix(pulse, realization.delays) - p * r_hat.transpose();
    const ComplexVector& g = realization.gains;
    return (g.adjoint() * kernel.cast<Complex>() * g)(0, 0).real();
}

double checked_sqrt(double radicand)
{
    if (radicand >= 0.0)
        return std::sqrt(radicand);
    if (radicand >= -kClampWindow)
        return 0.0;
    throw NumericalInconsistency("interference variance radicand is negative ("
                                 + std::to_string(radicand)
                                 + "); h_o is not the optimum for this realization and timing");
}

} // namespace

double compute_eta_o(const ChannelRealization& realization, Complex h_o, double tau_hat,
                     const PulseShape& pulse)
{
    const Complex optimum = compute_h_o(realization, tau_hat, pulse);
    if (std::abs(h_o - optimum) <= 1e-12 * std::max(1.0, std::abs(optimum)))
        return checked_sqrt(residual_power(realization, tau_hat, pulse));
    const double radicand = pulse.signal_power() * (realization.gains.squaredNorm() - std::norm(h_o))
                            + path_cross_power(realization, pulse);
    return checked_sqrt(radicand);
}

FadingCoefficients characterize(const ChannelRealization& realization, double tau_hat,
                                const PulseShape& pulse)
{
    const Complex h = compute_h_o(realization, tau_hat, pulse);
    return {h, compute_eta_o(realization, h, tau_hat, pulse), tau_hat};
}

double error_variance_J(const ChannelRealization& realization, Complex h, double tau_hat,
                        const PulseShape& pulse, double e_s)
{
    const Complex projection = desired_projection(realization, tau_hat, pulse);
    const double value = pulse.signal_power() * (std::norm(h) + realization.gains.squaredNorm())
                         + path_cross_power(realization, pulse)
                         - 2.0 * (h * std::conj(projection)).real();
    return e_s * value;
}

Complex error_variance_gradient(const ChannelRealization& realization, Complex h, double tau_hat,
                                const PulseShape& pulse, double e_s)
{
    const Complex projection = desired_projection(realization, tau_hat, pulse);
    return 2.0 * e_s * (pulse.signal_power() * h - projection);
}

Complex cross_correlation(const ChannelRealization& realization, Complex h, double tau_hat,
                          const PulseShape& pulse, double e_s)
{
    const Complex projection = desired_projection(realization, tau_hat, pulse);
    return e_s * (std::conj(h) * projection - std::norm(h) * pulse.signal_power());
}

double sinr(const FadingCoefficients& coeffs, const LinkBudget& budget, const PulseShape& pulse)
{
    budget.validate();
    const double desired = budget.symbol_energy * std::norm(coeffs.h_o) * pulse.signal_power();
    const double denominator = budget.symbol_energy * coeffs.eta_o * coeffs.eta_o + budget.noise_variance;
    if (denominator == 0.0)
        return std::numeric_limits<double>::infinity();
    return desired / denominator;
}

double closed_form_sir(const FadingCoefficients& coeffs, const PulseShape& pulse)
{
    return sinr(coeffs, LinkBudget{1.0, 0.0}, pulse);
}

double noise_variance_from_spectral_density(double n0_dbm_per_hz, double noise_bandwidth_hz)
{
    if (!(noise_bandwidth_hz > 0.0))
        throw std::invalid_argument("noise bandwidth must be > 0 Hz");
    return std::pow(10.0, n0_dbm_per_hz / 10.0) * noise_bandwidth_hz;
}

} // namespace mediumband
