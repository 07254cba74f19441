#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eqindex {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cdouble = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;

inline constexpr cdouble kI{0.0, 1.0};

// Raised when a rank decision has no clear spectral gap and an integer
// result would be meaningless.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqindex
