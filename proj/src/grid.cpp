#include "hillkrein/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hillkrein::grid {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// FFTW planning is not thread-safe; transforms here are microseconds, so one
// lock around the whole call keeps parallel sweeps correct.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Forward real DFT: bins[m] = sum_j f_j exp(-2 pi i m j / N), m = 0..N/2.
std::vector<std::complex<double>> rdft(const Eigen::VectorXd& f) {
  const int n = static_cast<int>(f.size());
  std::vector<std::complex<double>> bins(n / 2 + 1);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  std::vector<double> in(f.data(), f.data() + n);
  fftw_plan plan = fftw_plan_dft_r2c_1d(
      n, in.data(), reinterpret_cast<fftw_complex*>(bins.data()),
      FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return bins;
}

// Inverse of rdft with 1/N normalization applied by the caller convention:
// input bins as produced by rdft scaled however desired; output length n.
Eigen::VectorXd irdft(std::vector<std::complex<double>> bins, int n) {
  Eigen::VectorXd out(n);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_plan plan = fftw_plan_dft_c2r_1d(
      n, reinterpret_cast<fftw_complex*>(bins.data()), out.data(),
      FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

TrigBasis::TrigBasis(int n, double length) : n_(n), length_(length) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("TrigBasis: N must be even and >= 4");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("TrigBasis: period must be positive");
  }
  nodes_.resize(n);
  for (int j = 0; j < n; ++j) nodes_[j] = length * j / n;
}

int TrigBasis::harmonic(int index) const {
  return index <= n_ / 2 ? index : index - n_ / 2;
}

double TrigBasis::wavenumber(int index) const {
  return kTwoPi * harmonic(index) / length_;
}

Eigen::VectorXd TrigBasis::analyze(const Eigen::VectorXd& values) const {
  const auto bins = rdft(values);
  const int half = n_ / 2;
  Eigen::VectorXd coeffs(n_);
  const double cos_scale = std::sqrt(2.0 * length_) / n_;
  const double sin_scale = cos_scale;
  coeffs[0] = std::sqrt(length_) * bins[0].real() / n_;
  for (int m = 1; m < half; ++m) {
    coeffs[m] = cos_scale * bins[m].real();
    coeffs[half + m] = -sin_scale * bins[m].imag();
  }
  // Nyquist cosine appears once in the DFT, hence the halved weight.
  coeffs[half] = 0.5 * cos_scale * bins[half].real();
  return coeffs;
}

Eigen::VectorXd TrigBasis::synthesize(const Eigen::VectorXd& coeffs) const {
  const int half = n_ / 2;
  std::vector<std::complex<double>> bins(half + 1);
  const double inv_cos = 1.0 / std::sqrt(2.0 * length_);
  bins[0] = {coeffs[0] / std::sqrt(length_), 0.0};
  for (int m = 1; m < half; ++m) {
    bins[m] = {inv_cos * coeffs[m], -inv_cos * coeffs[half + m]};
  }
  bins[half] = {2.0 * inv_cos * coeffs[half], 0.0};
  return irdft(std::move(bins), n_);
}

Eigen::VectorXd TrigBasis::derivative(const Eigen::VectorXd& values) const {
  auto bins = rdft(values);
  const int half = n_ / 2;
  for (int m = 0; m <= half; ++m) {
    const double w = kTwoPi * m / length_;
    bins[m] = std::complex<double>(0.0, w) * bins[m] / double(n_);
  }
  bins[half] = 0.0;  // sine partner of the Nyquist mode is not representable
  return irdft(std::move(bins), n_);
}

Eigen::VectorXd TrigBasis::second_derivative(
    const Eigen::VectorXd& values) const {
  auto bins = rdft(values);
  const int half = n_ / 2;
  for (int m = 0; m <= half; ++m) {
    const double w = kTwoPi * m / length_;
    bins[m] *= -w * w / double(n_);
  }
  return irdft(std::move(bins), n_);
}

Moments fourier_moments(const Eigen::VectorXd& samples, int max_m) {
  const int n = static_cast<int>(samples.size());
  if (max_m > n / 2) {
    throw std::invalid_argument("fourier_moments: max_m beyond Nyquist");
  }
  const auto bins = rdft(samples);
  Moments mom;
  mom.cos_m.resize(max_m + 1);
  mom.sin_m.resize(max_m + 1);
  for (int m = 0; m <= max_m; ++m) {
    mom.cos_m[m] = bins[m].real() / n;
    mom.sin_m[m] = -bins[m].imag() / n;
  }
  return mom;
}

double trapezoid(const Eigen::VectorXd& values, double length) {
  return values.sum() * length / static_cast<double>(values.size());
}

double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
             double length) {
  return f.dot(g) * length / static_cast<double>(f.size());
}

double l2_norm(const Eigen::VectorXd& f, double length) {
  return std::sqrt(std::max(0.0, inner(f, f, length)));
}

}  // namespace hillkrein::grid
