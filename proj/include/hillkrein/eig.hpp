#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hillkrein::eig {

/// Dense symmetric eigendecomposition (LAPACK dsyevd), eigenvalues ascending,
/// eigenvectors as columns of `vectors`.
void symmetric(const Eigen::MatrixXd& a, Eigen::VectorXd& values,
               Eigen::MatrixXd& vectors);

Eigen::VectorXd symmetric_values(const Eigen::MatrixXd& a);

/// Dense nonsymmetric eigenvalues (LAPACK dgeev), unordered.
std::vector<std::complex<double>> nonsymmetric_values(const Eigen::MatrixXd& a);

}  // namespace hillkrein::eig
