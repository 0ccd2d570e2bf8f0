// Common scalar and dense-matrix aliases used across the library.
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ch {

using Real = double;
using Complex = std::complex<double>;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

}  // namespace ch
