#pragma once

#include <complex>

#include <Eigen/Dense>

namespace geope {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Frobenius inner product Tr(a^dag b) without forming the product matrix.
inline Complex frob_inner(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

}  // namespace geope
