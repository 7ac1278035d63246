#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace mediumband {

using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;

/// Raised when an analytically nonnegative quantity comes out clearly negative,
/// which means the inputs are inconsistent (e.g. a non-optimal h passed where
/// the optimum is required).
class NumericalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mediumband
