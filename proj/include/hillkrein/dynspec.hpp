#pragma once

#include "hillkrein/coupling.hpp"
#include "hillkrein/hillspec.hpp"
#include "hillkrein/waveforms.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace hillkrein::dynspec {

/// Discretized J L: the real block matrix [[0, L_im], [-L_re, 0]], where
/// L_re and L_im are the 2x2 coupled Hill-type blocks of the linearized
/// operator built from the S-matrix, on the same sector basis as hillspec.
struct LinearizedPencil {
  Eigen::MatrixXd jl;  // 4d x 4d, d = sector dimension
  int block_dim = 0;   // d
  hillspec::Space space = hillspec::Space::full;
  double omega = 0.0;
};

/// Symmetric 4-component linearized operator blockdiag(L_re, L_im),
/// the congruent counterpart of the blockwise Hill counts.
Eigen::MatrixXd assemble_linearized(const coupling::CouplingCase& c,
                                    const waveforms::GridProfile& profile,
                                    hillspec::Space space);

LinearizedPencil assemble_jl(const coupling::CouplingCase& c,
                             const waveforms::GridProfile& profile,
                             hillspec::Space space);

/// Apply the linearized operator to a 4-component grid function (columns =
/// components), with spectral second derivatives.
Eigen::MatrixXd apply_linearized(const coupling::CouplingCase& c,
                                 const waveforms::GridProfile& profile,
                                 const Eigen::MatrixXd& theta);

struct Growth {
  double max_real = 0.0;
  int n_unstable = 0;  // eigenvalues with Re > tol
  bool spectrum_symmetric = true;  // {lambda, -lambda, conj} pairing holds
  bool stable = false;
  std::vector<std::complex<double>> eigenvalues;
};

/// Dense nonsymmetric eigensolve of J L; stable iff max Re lambda <= tol.
Growth growth_verdict(const LinearizedPencil& pencil, double tol_real);

/// Default instability threshold 1e-5 max(1, omega); looser than the Hill
/// zero tolerance because discretized Hamiltonian spectra split O(sqrt(eps))
/// off the imaginary axis.
double default_tol_real(double omega);

}  // namespace hillkrein::dynspec
