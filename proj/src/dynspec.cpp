#include "hillkrein/dynspec.hpp"

#include "hillkrein/eig.hpp"
#include "hillkrein/grid.hpp"

#include <algorithm>
#include <cmath>

namespace hillkrein::dynspec {

namespace {

// The two 2x2 operator blocks of L = (-d2 + omega) Id - phi^4 S: rows/cols
// 0..1 of S act on the real components, 2..3 on the imaginary ones.
void coupled_blocks(const coupling::CouplingCase& c,
                    const waveforms::GridProfile& profile,
                    hillspec::Space space, Eigen::MatrixXd& l_re,
                    Eigen::MatrixXd& l_im) {
  const hillspec::OperatorPieces pieces =
      hillspec::operator_pieces(profile, space);
  const Eigen::Matrix4d s = coupling::s_matrix(c);
  const int d = static_cast<int>(pieces.free_diag.size());
  l_re.setZero(2 * d, 2 * d);
  l_im.setZero(2 * d, 2 * d);
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      l_re.block(r * d, col * d, d, d) = -s(r, col) * pieces.quartic;
      l_im.block(r * d, col * d, d, d) = -s(r + 2, col + 2) * pieces.quartic;
      if (r == col) {
        l_re.block(r * d, col * d, d, d).diagonal() += pieces.free_diag;
        l_im.block(r * d, col * d, d, d).diagonal() += pieces.free_diag;
      }
    }
  }
}

}  // namespace

Eigen::MatrixXd assemble_linearized(const coupling::CouplingCase& c,
                                    const waveforms::GridProfile& profile,
                                    hillspec::Space space) {
  Eigen::MatrixXd l_re, l_im;
  coupled_blocks(c, profile, space, l_re, l_im);
  const int two_d = static_cast<int>(l_re.rows());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(2 * two_d, 2 * two_d);
  l.topLeftCorner(two_d, two_d) = l_re;
  l.bottomRightCorner(two_d, two_d) = l_im;
  return l;
}

LinearizedPencil assemble_jl(const coupling::CouplingCase& c,
                             const waveforms::GridProfile& profile,
                             hillspec::Space space) {
  Eigen::MatrixXd l_re, l_im;
  coupled_blocks(c, profile, space, l_re, l_im);
  const int two_d = static_cast<int>(l_re.rows());
  LinearizedPencil pencil;
  pencil.block_dim = two_d / 2;
  pencil.space = space;
  pencil.omega = profile.params.omega;
  pencil.jl = Eigen::MatrixXd::Zero(2 * two_d, 2 * two_d);
  pencil.jl.topRightCorner(two_d, two_d) = l_im;
  pencil.jl.bottomLeftCorner(two_d, two_d) = -l_re;
  return pencil;
}

Eigen::MatrixXd apply_linearized(const coupling::CouplingCase& c,
                                 const waveforms::GridProfile& profile,
                                 const Eigen::MatrixXd& theta) {
  const Eigen::Matrix4d s = coupling::s_matrix(c);
  grid::TrigBasis basis(profile.n, profile.params.L);
  const double omega = profile.params.omega;
  Eigen::MatrixXd out(theta.rows(), 4);
  Eigen::VectorXd quart =
      profile.phi.array().square().square().matrix();
  for (int comp = 0; comp < 4; ++comp) {
    Eigen::VectorXd coupled = Eigen::VectorXd::Zero(theta.rows());
    for (int other = 0; other < 4; ++other) {
      if (s(comp, other) != 0.0) {
        coupled += s(comp, other) * theta.col(other);
      }
    }
    out.col(comp) = -basis.second_derivative(theta.col(comp)) +
                    omega * theta.col(comp) -
                    quart.cwiseProduct(coupled);
  }
  return out;
}

double default_tol_real(double omega) {
  return 1e-5 * std::max(1.0, omega);
}

Growth growth_verdict(const LinearizedPencil& pencil, double tol_real) {
  Growth growth;
  growth.eigenvalues = eig::nonsymmetric_values(pencil.jl);
  growth.max_real = -std::numeric_limits<double>::infinity();
  for (const auto& lam : growth.eigenvalues) {
    growth.max_real = std::max(growth.max_real, lam.real());
    if (lam.real() > tol_real) ++growth.n_unstable;
  }
  // Hamiltonian pairing: every eigenvalue must have a partner near -lambda.
  for (const auto& lam : growth.eigenvalues) {
    const double tol = 1e-6 * std::max(1.0, std::abs(lam));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& mu : growth.eigenvalues) {
      best = std::min(best, std::abs(mu + lam));
      if (best <= tol) break;
    }
    if (best > tol) {
      growth.spectrum_symmetric = false;
      break;
    }
  }
  growth.stable = growth.max_real <= tol_real;
  return growth;
}

}  // namespace hillkrein::dynspec
