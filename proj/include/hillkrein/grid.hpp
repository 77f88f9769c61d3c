#pragma once

#include <Eigen/Dense>

namespace hillkrein::grid {

/// Uniform periodic grid x_j = j L / N on [0, L), N even, together with the
/// real trigonometric basis orthonormal in L^2(0, L):
///   index 0                : 1/sqrt(L)
///   index m, m = 1..N/2    : sqrt(2/L) cos(2 pi m x / L)
///   index N/2 + j, j < N/2 : sqrt(2/L) sin(2 pi j x / L)
/// The N grid values and the N coefficients are an exact transform pair.
class TrigBasis {
public:
  TrigBasis(int n, double length);

  int size() const { return n_; }
  double length() const { return length_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }

  /// Harmonic index m of a basis function (0 for the constant).
  int harmonic(int index) const;
  bool is_sine(int index) const { return index > n_ / 2; }
  /// Spatial frequency 2 pi m / L of a basis function.
  double wavenumber(int index) const;

  Eigen::VectorXd analyze(const Eigen::VectorXd& values) const;
  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const;

  /// Spectral d/dx and d2/dx2 on grid values.
  Eigen::VectorXd derivative(const Eigen::VectorXd& values) const;
  Eigen::VectorXd second_derivative(const Eigen::VectorXd& values) const;

private:
  int n_;
  double length_;
  Eigen::VectorXd nodes_;
};

/// Cosine/sine moments of a sampled L-periodic function,
///   cos_m[m] = (1/M) sum_j f_j cos(2 pi m j / M),  m = 0..max_m,
/// which equals (1/L) int f cos(2 pi m x / L) dx for band-limited f.
struct Moments {
  Eigen::VectorXd cos_m;
  Eigen::VectorXd sin_m;
};
Moments fourier_moments(const Eigen::VectorXd& samples, int max_m);

/// Periodic trapezoid rule: (L/N) sum f_j.
double trapezoid(const Eigen::VectorXd& values, double length);
double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g, double length);
double l2_norm(const Eigen::VectorXd& f, double length);

}  // namespace hillkrein::grid
