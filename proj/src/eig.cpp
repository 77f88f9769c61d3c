#include "hillkrein/eig.hpp"

#include <lapacke.h>

#include <stdexcept>

namespace hillkrein::eig {

void symmetric(const Eigen::MatrixXd& a, Eigen::VectorXd& values,
               Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(a.rows());
  vectors = a;
  values.resize(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                  vectors.data(), n, values.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  }
}

Eigen::VectorXd symmetric_values(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd work = a;
  Eigen::VectorXd values(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(),
                                  n, values.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  }
  return values;
}

std::vector<std::complex<double>> nonsymmetric_values(
    const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd work = a;
  Eigen::VectorXd wr(n), wi(n);
  const int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                    wi.data(), nullptr, n, nullptr, n);
  if (info != 0) {
    throw std::runtime_error("dgeev failed, info=" + std::to_string(info));
  }
  std::vector<std::complex<double>> values(n);
  for (int i = 0; i < n; ++i) values[i] = {wr[i], wi[i]};
  return values;
}

}  // namespace hillkrein::eig
