#pragma once

#include "hillkrein/coupling.hpp"
#include "hillkrein/hillspec.hpp"
#include "hillkrein/report.hpp"
#include "hillkrein/waveforms.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hillkrein::kreinindex {

/// Kernel elements of the 4-component linearized operator, as N x 4 grid
/// functions, following the case analysis: generically
/// (phi', B phi', 0, 0), (0, 0, phi, B phi); the decoupled gamma = 0
/// quadruple; and the extra (-B phi, phi, 0, 0) direction at B = 1,
/// gamma = 2 kappa. In the odd sector only the odd members survive.
struct KernelBasis {
  std::vector<Eigen::MatrixXd> elements;
  std::vector<std::string> labels;
};

KernelBasis kernel_basis(const coupling::CouplingCase& c,
                         const waveforms::GridProfile& profile,
                         hillspec::Space space);

/// Thrown when the Krein matrix cannot be formed or trusted; the caller
/// reports inconclusive with the message as diagnostic.
struct PipelineRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimum-norm solution of H u = f with declared zero modes deflated,
/// through the eigendecomposition held by `spec`. Requires f orthogonal to
/// the zero modes (1e-8 relative); the defect of the deflated solve stays
/// below 1e-8 ||f||.
Eigen::VectorXd solve_on_complement(const hillspec::HillSpectrum& spec,
                                    const Eigen::VectorXd& f_grid);

/// <L_1^{-1} w, w> for the wave w itself: negative (equals
/// -1/2 theta^2 d||phi||^2/domega along the wave curve). Solved in the full
/// sector for cnoidal profiles, in the odd sector for snoidal ones.
double quad_form_I(const waveforms::GridProfile& profile);

/// <L_2^{-1} w', w'>: positive. Full sector for either profile.
double quad_form_J(const waveforms::GridProfile& profile);

/// Krein matrix V_ij = (L^{-1} J Theta_i, J Theta_j), computed channelwise
/// through the U-diagonalized operator. Throws PipelineRefusal when V is
/// numerically singular or a channel solve is inconsistent.
Eigen::MatrixXd assemble_V(const coupling::CouplingCase& c,
                           hillspec::Space space,
                           const waveforms::GridProfile& profile,
                           const coupling::OrthogonalFrame& frame,
                           const KernelBasis& kernel,
                           const std::array<hillspec::HillSpectrum, 4>& spectra);

struct VerdictResult {
  int n_V = 0;
  int K_Ham = 0;
  Verdict verdict = Verdict::inconclusive;
};

/// K_Ham = n(L) - n(V); zero -> stable, odd -> unstable (k_r >= 1),
/// nonzero even -> inconclusive.
VerdictResult krein_verdict(int n_L, const Eigen::MatrixXd& v);

struct PaperExpectation {
  int n_L = 0, z_L = 0, n_V = 0, K_Ham = 0;
  std::string verdict;
};

/// Static table of the paper-covered (branch, gamma-regime, space, profile)
/// cells; nullopt when the configuration is open.
std::optional<PaperExpectation> paper_expectation(coupling::Branch branch,
                                                  hillspec::Space space,
                                                  waveforms::ProfileKind kind,
                                                  double kappa, double gamma);

struct CoverageCell {
  coupling::Branch branch;
  hillspec::Space space;
  waveforms::ProfileKind profile;
  std::string gamma_label;
  double gamma_at_unit_kappa;
};

const std::vector<CoverageCell>& covered_cells();

struct ReportOptions {
  int n = 256;
  double tol_zero_override = 0.0;  // 0 = default 1e-6 max(1, omega)
  bool with_jl = true;
  int max_doublings = 2;
};

StabilityReport stability_report(double kappa, double gamma,
                                 coupling::Branch branch, double k, double L,
                                 waveforms::ProfileKind kind,
                                 hillspec::Space space,
                                 const ReportOptions& opts = {});

}  // namespace hillkrein::kreinindex
