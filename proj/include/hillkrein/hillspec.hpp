#pragma once

#include "hillkrein/grid.hpp"
#include "hillkrein/waveforms.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hillkrein::hillspec {

/// Symmetry sector the operator acts on. The odd sector is realized as a
/// sine-Galerkin basis (exact parity enforcement) and only makes sense for
/// snoidal profiles, whose quartic potential is even while the wave is odd.
enum class Space { full, odd };

std::string to_string(Space s);
Space space_from_string(const std::string& s);

int space_dim(int n, Space space);

/// Grid values -> reduced coefficient vector of the sector basis.
Eigen::VectorXd to_coeffs(const grid::TrigBasis& basis, Space space,
                          const Eigen::VectorXd& values);
/// Reduced coefficients -> grid values.
Eigen::VectorXd to_grid(const grid::TrigBasis& basis, Space space,
                        const Eigen::VectorXd& coeffs);

enum class Parity { even, odd, mixed };

struct HillSpectrum {
  double beta = 0.0;
  Space space = Space::full;
  int grid_n = 0;
  double length = 0.0;
  double tol_zero = 0.0;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, sector-basis coefficients
  int n_count = 0;               // eigenvalues < -tol_zero
  int z_count = 0;               // |eigenvalue| <= tol_zero
  double kernel_overlap_phi_prime = 0.0;  // cos angle vs phi', best zero mode
  double kernel_overlap_phi = 0.0;        // cos angle vs phi
  // The quartic potential is symmetric about x = 0 and about the quarter
  // period, so eigenfunctions carry an exact parity label at both centers;
  // the odd-restriction arguments run at the wave's own odd center.
  std::vector<Parity> parities;          // about x = 0, lowest six
  std::vector<Parity> parities_quarter;  // about x = L/4, lowest six
  waveforms::ProfileKind profile_kind = waveforms::ProfileKind::cnoidal;
  bool resolved = true;  // false when the zero set is not cleanly separated
};

/// Building blocks shared by the scalar Hill operators and the 4-component
/// linearized operator: the free-part diagonal omega + (2 pi m / L)^2 and the
/// Galerkin matrix of multiplication by phi^4. The quartic enters through
/// Fourier moments of a twice oversampled closed-form resampling of the wave,
/// so products are dealiased.
struct OperatorPieces {
  Eigen::VectorXd free_diag;
  Eigen::MatrixXd quartic;
};
OperatorPieces operator_pieces(const waveforms::GridProfile& profile,
                               Space space);

/// Galerkin matrix of -d2/dx2 + omega - beta phi^4 on the sector basis.
Eigen::MatrixXd assemble_hill(double beta,
                              const waveforms::GridProfile& profile,
                              Space space);

HillSpectrum spectrum_counts(const Eigen::MatrixXd& h, double tol_zero,
                             const waveforms::GridProfile& profile,
                             Space space, double beta);

Eigen::VectorXd eigenvector_on_grid(const HillSpectrum& spec, int index);

struct ComparisonReport {
  bool pass = true;
  int first_violation = -1;  // index into the spectra list
  std::string detail;
};

/// Interlacing consequence of the periodic comparison theorem: spectra are
/// passed ordered by increasing beta; each eigenvalue must be nonincreasing
/// along the list, and n(.) nondecreasing.
ComparisonReport comparison_check(const std::vector<HillSpectrum>& spectra);

struct ParityReport {
  bool pass = true;
  std::string detail;
};

/// Ground state of a Hill operator with even potential is even; for the
/// quintic cnoidal beta_1 operator the second eigenfunction is odd.
ParityReport parity_floquet_check(const HillSpectrum& spec,
                                  bool expect_second_odd);

}  // namespace hillkrein::hillspec
