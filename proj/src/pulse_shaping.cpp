#include "mediumband/pulse_shaping.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace mediumband {

namespace {

constexpr int kGaussOrder = 32;

struct GaussLegendre {
    std::array<double, kGaussOrder> nodes{};
    std::array<double, kGaussOrder> weights{};
};

// Golub-Welsch: nodes are the eigenvalues of the Legendre Jacobi matrix,
// weights are 2 * (first eigenvector component)^2.
GaussLegendre make_gauss_legendre()
{
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(kGaussOrder, kGaussOrder);
    for (int k = 1; k < kGaussOrder; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussLegendre rule;
    for (int i = 0; i < kGaussOrder; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = 2.0 * v0 * v0;
    }
    return rule;
}

const GaussLegendre& gauss_legendre()
{
    static const GaussLegendre rule = make_gauss_legendre();
    return rule;
}

} // namespace

PulseShape::PulseShape(double beta, double symbol_period)
    : beta_(beta), symbol_period_(symbol_period)
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("roll-off factor beta must lie in [0, 1], got " + std::to_string(beta));
    if (!(symbol_period > 0.0) || !std::isfinite(symbol_period))
        throw std::invalid_argument("symbol period must be positive and finite");
}

double eval_pulse(const PulseShape& pulse, double t)
{
    return raised_cosine(t / pulse.symbol_period(), pulse.beta());
}

double eval_autocorr(const PulseShape& pulse, double tau)
{
    return raised_cosine_autocorr(tau / pulse.symbol_period(), pulse.beta());
}

double eval_pulse_time_autocorr(const PulseShape& pulse, double tau)
{
    // Normalized units: G(f) = 1 for |f| <= f1, cosine taper to 0 at f2.
    const double beta = pulse.beta();
    const double x = std::abs(tau / pulse.symbol_period());
    const double pi = std::numbers::pi;
    const double f1 = 0.5 * (1.0 - beta);
    const double f2 = 0.5 * (1.0 + beta);

    double flat = (x == 0.0) ? f1 : std::sin(2.0 * pi * f1 * x) / (2.0 * pi * x);

    double taper = 0.0;
    if (beta > 0.0) {
        const auto& rule = gauss_legendre();
        // One panel per ~1 rad of phase growth keeps the 32-point rule exact to
        // rounding for any practical lag.
        const int panels = 1 + static_cast<int>(2.0 * pi * x * beta);
        const double width = (f2 - f1) / panels;
        for (int p = 0; p < panels; ++p) {
            const double a = f1 + p * width;
            const double mid = a + 0.5 * width;
            double sum = 0.0;
            for (int i = 0; i < kGaussOrder; ++i) {
                const double f = mid + 0.5 * width * rule.nodes[i];
                const double g = 0.5 * (1.0 + std::cos(pi / beta * (f - f1)));
                sum += rule.weights[i] * g * g * std::cos(2.0 * pi * f * x);
            }
            taper += 0.5 * width * sum;
        }
    }
    return 2.0 * (flat + taper);
}

Eigen::MatrixXd autocorr_matrix(const PulseShape& pulse, const RealVector& delays)
{
    const Eigen::Index n = delays.size();
    Eigen::MatrixXd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r(i, i) = pulse.signal_power();
        for (Eigen::Index j = 0; j < i; ++j) {
            r(i, j) = eval_autocorr(pulse, delays(i) - delays(j));
            r(j, i) = r(i, j);
        }
    }
    return r;
}

RealVector autocorr_vector(const PulseShape& pulse, const RealVector& delays, double tau)
{
    return delays.unaryExpr([&](double d) { return eval_autocorr(pulse, d - tau); });
}

} // namespace mediumband
