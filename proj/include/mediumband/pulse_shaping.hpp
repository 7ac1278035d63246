#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "mediumband/types.hpp"

namespace mediumband {

namespace detail {

template <typename Scalar>
inline constexpr Scalar pi = std::numbers::pi_v<Scalar>;

/// Normalized sinc, sin(pi x) / (pi x).
template <typename Scalar>
Scalar sinc(Scalar x)
{
    using std::sin;
    if (x == Scalar(0))
        return Scalar(1);
    return sin(pi<Scalar> * x) / (pi<Scalar> * x);
}

// cos(pi x / 2) / (1 - x^2), even in x, limit pi/4 at |x| = 1.
// Near |x| = 1 the cosine is rewritten as sin(pi (1 - x) / 2) so the common
// factor (1 - x) cancels exactly instead of numerically.
template <typename Scalar>
Scalar cos_taper_ratio(Scalar x)
{
    using std::abs;
    using std::cos;
    using std::sin;
    x = abs(x);
    const Scalar d = Scalar(1) - x;
    if (abs(d) < Scalar(0.25)) {
        if (d == Scalar(0))
            return pi<Scalar> / Scalar(4);
        return sin(pi<Scalar> * d / Scalar(2)) / (d * (Scalar(1) + x));
    }
    return cos(pi<Scalar> * x / Scalar(2)) / (d * (Scalar(1) + x));
}

// sinc(y) / (1 - y^2), even in y, limit 1/2 at |y| = 1.
template <typename Scalar>
Scalar sinc_taper_ratio(Scalar y)
{
    using std::abs;
    using std::sin;
    y = abs(y);
    const Scalar e = Scalar(1) - y;
    if (abs(e) < Scalar(0.25)) {
        if (e == Scalar(0))
            return Scalar(0.5);
        return sin(pi<Scalar> * e) / (pi<Scalar> * y * e * (Scalar(1) + y));
    }
    return sinc(y) / (e * (Scalar(1) + y));
}

} // namespace detail

/// Raised-cosine pulse g(t) in normalized time (t in units of the symbol period).
///
/// At t = +-1/(2 beta) the closed-form branch (pi/4) sinc(1/(2 beta)) is
/// returned; arguments arbitrarily close to it are evaluated through a
/// cancellation-free rewrite, so the result is continuous to machine precision.
/// beta = 0 reduces to sinc(t).
template <typename Scalar>
Scalar raised_cosine(Scalar t, Scalar beta)
{
    using std::abs;
    t = abs(t);
    if (beta == Scalar(0))
        return detail::sinc(t);
    if (t == Scalar(1) / (Scalar(2) * beta))
        return detail::pi<Scalar> / Scalar(4) * detail::sinc(Scalar(1) / (Scalar(2) * beta));
    return detail::sinc(t) * detail::cos_taper_ratio(Scalar(2) * beta * t);
}

/// Autocorrelation R(tau) = E{s(t) s(t + tau)} of a unit-power linearly
/// modulated raised-cosine signal, in normalized time.
///
/// R(tau) = g(tau) - (beta/4) sinc(beta tau) cos(pi tau) / (1 - (beta tau)^2),
/// with R(0) = 1 - beta/4. Both removable singularities (tau = 1/(2 beta) and
/// tau = 1/beta) are handled by the same rewrite as raised_cosine().
template <typename Scalar>
Scalar raised_cosine_autocorr(Scalar tau, Scalar beta)
{
    using std::abs;
    using std::cos;
    tau = abs(tau);
    if (beta == Scalar(0))
        return detail::sinc(tau);
    const Scalar first = detail::sinc(tau) * detail::cos_taper_ratio(Scalar(2) * beta * tau);
    const Scalar second = beta / Scalar(4) * detail::sinc_taper_ratio(beta * tau)
                          * cos(detail::pi<Scalar> * tau);
    return first - second;
}

/// Roll-off factor and symbol period of the combined TX/RX raised-cosine filter.
class PulseShape {
public:
    /// Throws std::invalid_argument unless 0 <= beta <= 1 and symbol_period > 0.
    explicit PulseShape(double beta, double symbol_period = 1.0);

    double beta() const noexcept { return beta_; }
    double symbol_period() const noexcept { return symbol_period_; }

    /// E{|s(t)|^2} = R(0) = 1 - beta/4.
    double signal_power() const noexcept { return 1.0 - 0.25 * beta_; }

    friend bool operator==(const PulseShape&, const PulseShape&) = default;

private:
    double beta_;
    double symbol_period_;
};

/// g(t); t in the same time unit as pulse.symbol_period().
double eval_pulse(const PulseShape& pulse, double t);

/// R(tau); tau in the same time unit as pulse.symbol_period().
double eval_autocorr(const PulseShape& pulse, double tau);

/// psi_gg(tau) / T_s, the time autocorrelation of g normalized by the symbol
/// period. Computed independently of eval_autocorr() by integrating
/// |G(f)|^2 cos(2 pi f tau) over the raised-cosine spectrum (Gauss-Legendre),
/// so agreement between the two is a real check of the closed form.
double eval_pulse_time_autocorr(const PulseShape& pulse, double tau);

/// Matrix of R(delays[n] - delays[m]).
Eigen::MatrixXd autocorr_matrix(const PulseShape& pulse, const RealVector& delays);

/// Vector of R(delays[n] - tau).
RealVector autocorr_vector(const PulseShape& pulse, const RealVector& delays, double tau);

} // namespace mediumband
