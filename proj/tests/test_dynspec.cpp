#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hillkrein/coupling.hpp"
#include "hillkrein/dynspec.hpp"
#include "hillkrein/eig.hpp"
#include "hillkrein/grid.hpp"
#include "hillkrein/hillspec.hpp"
#include "hillkrein/kreinindex.hpp"
#include "hillkrein/waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace hillkrein;
using coupling::Branch;
using hillspec::Space;
using waveforms::ProfileKind;

namespace {
constexpr double kTwoPi = 6.283185307179586476925;

waveforms::GridProfile make_profile(double gamma, Branch branch,
                                    ProfileKind kind, double k = 0.5,
                                    int n = 256) {
  const auto cpl = coupling::make_case(1.0, gamma, branch);
  const auto params = waveforms::wave_params(k, kTwoPi, 1.0, gamma, cpl.B);
  return waveforms::sample_profile(kind, params, n);
}
}  // namespace

TEST_CASE("constant-coefficient surrogate: purely imaginary spectrum") {
  // free blocks: quartic term zeroed, leaving [[0, D], [-D, 0]]
  const auto profile = make_profile(0.0, Branch::one, ProfileKind::cnoidal,
                                    0.5, 64);
  const auto pieces = hillspec::operator_pieces(profile, Space::full);
  const int d = static_cast<int>(pieces.free_diag.size());
  Eigen::MatrixXd jl = Eigen::MatrixXd::Zero(4 * d, 4 * d);
  for (int i = 0; i < 2 * d; ++i) {
    jl(i, 2 * d + i) = pieces.free_diag[i % d];
    jl(2 * d + i, i) = -pieces.free_diag[i % d];
  }
  const auto values = eig::nonsymmetric_values(jl);
  double max_re = 0.0;
  for (const auto& lam : values) max_re = std::max(max_re, std::fabs(lam.real()));
  CHECK(max_re < 1e-9);
  // the imaginary parts are exactly the free diagonal entries
  const double expected_smallest = profile.params.omega;
  double min_im = 1e300;
  for (const auto& lam : values) min_im = std::min(min_im, std::fabs(lam.imag()));
  CHECK(min_im == doctest::Approx(expected_smallest).epsilon(1e-10));
}

TEST_CASE("kernel elements of L are annihilated by J L") {
  const auto cpl = coupling::make_case(1.0, 1.0, Branch::one);
  const auto profile = make_profile(1.0, Branch::one, ProfileKind::snoidal);
  const auto pencil = dynspec::assemble_jl(cpl, profile, Space::odd);
  const auto kernel = kreinindex::kernel_basis(cpl, profile, Space::odd);
  grid::TrigBasis basis(profile.n, kTwoPi);
  for (const auto& theta : kernel.elements) {
    Eigen::VectorXd stacked(4 * pencil.block_dim);
    for (int comp = 0; comp < 4; ++comp) {
      stacked.segment(comp * pencil.block_dim, pencil.block_dim) =
          hillspec::to_coeffs(basis, Space::odd, theta.col(comp));
    }
    CHECK((pencil.jl * stacked).norm() < 1e-6 * stacked.norm());
  }
}

TEST_CASE("blockwise inertia equals the assembled 4-component operator") {
  for (double gamma : {1.0, 2.0}) {
    const auto cpl = coupling::make_case(1.0, gamma, Branch::one);
    const auto profile = make_profile(gamma, Branch::one, ProfileKind::cnoidal);
    const auto l_matrix = dynspec::assemble_linearized(cpl, profile, Space::full);
    CHECK((l_matrix - l_matrix.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::VectorXd values = eig::symmetric_values(l_matrix);
    const int direct_n = static_cast<int>((values.array() < -1e-6).count());
    int blockwise_n = 0;
    const double tau = 1e-6 * std::max(1.0, profile.params.omega);
    for (int i = 0; i < 4; ++i) {
      const auto spec = hillspec::spectrum_counts(
          hillspec::assemble_hill(cpl.betas[i], profile, Space::full), tau,
          profile, Space::full, cpl.betas[i]);
      blockwise_n += spec.n_count;
    }
    CHECK(direct_n == blockwise_n);  // Sylvester inertia transfer
  }
}

TEST_CASE("cnoidal B=1 gamma=2kappa full space has a real unstable mode") {
  const auto cpl = coupling::make_case(1.0, 2.0, Branch::one);
  const auto profile = make_profile(2.0, Branch::one, ProfileKind::cnoidal);
  const auto pencil = dynspec::assemble_jl(cpl, profile, Space::full);
  const auto growth =
      dynspec::growth_verdict(pencil, dynspec::default_tol_real(pencil.omega));
  CHECK_FALSE(growth.stable);
  CHECK(growth.max_real > 1e-3 * profile.params.omega);
  CHECK(growth.spectrum_symmetric);
}

TEST_CASE("stable snoidal odd case stays on the imaginary axis") {
  const auto cpl = coupling::make_case(1.0, 3.0, Branch::one);
  const auto profile = make_profile(3.0, Branch::one, ProfileKind::snoidal);
  const auto pencil = dynspec::assemble_jl(cpl, profile, Space::odd);
  const auto growth =
      dynspec::growth_verdict(pencil, dynspec::default_tol_real(pencil.omega));
  CHECK(growth.stable);
  CHECK(growth.max_real <= dynspec::default_tol_real(pencil.omega));
  CHECK(growth.spectrum_symmetric);
}

TEST_CASE("unstable snoidal odd case: B = B+") {
  const auto cpl = coupling::make_case(1.0, 3.0, Branch::bplus);
  const auto params = waveforms::wave_params(0.5, kTwoPi, 1.0, 3.0, cpl.B);
  const auto profile =
      waveforms::sample_profile(ProfileKind::snoidal, params, 256);
  const auto pencil = dynspec::assemble_jl(cpl, profile, Space::odd);
  const auto growth =
      dynspec::growth_verdict(pencil, dynspec::default_tol_real(pencil.omega));
  CHECK_FALSE(growth.stable);
  CHECK(growth.n_unstable >= 1);
}

TEST_CASE("growth rate is stable under grid refinement") {
  const auto cpl = coupling::make_case(1.0, 1.0, Branch::one);
  double rates[2];
  int idx = 0;
  for (int n : {128, 256}) {
    const auto profile =
        make_profile(1.0, Branch::one, ProfileKind::snoidal, 0.5, n);
    const auto pencil = dynspec::assemble_jl(cpl, profile, Space::odd);
    rates[idx++] =
        dynspec::growth_verdict(pencil, dynspec::default_tol_real(pencil.omega))
            .max_real;
  }
  CHECK(std::fabs(rates[0] - rates[1]) < 0.1 * std::fabs(rates[1]));
}

TEST_CASE("apply_linearized matches the assembled matrix") {
  const auto cpl = coupling::make_case(1.0, 1.0, Branch::one);
  const auto profile = make_profile(1.0, Branch::one, ProfileKind::cnoidal);
  grid::TrigBasis basis(profile.n, kTwoPi);
  // a smooth, periodic, non-symmetric test function in all four components
  Eigen::MatrixXd theta(profile.n, 4);
  for (int j = 0; j < profile.n; ++j) {
    const double x = basis.nodes()[j];
    theta(j, 0) = std::sin(x) + 0.3 * std::cos(2 * x);
    theta(j, 1) = std::cos(3 * x);
    theta(j, 2) = std::sin(2 * x) * std::cos(x);
    theta(j, 3) = 0.5 + std::sin(x);
  }
  const Eigen::MatrixXd applied = dynspec::apply_linearized(cpl, profile, theta);

  const auto l_matrix = dynspec::assemble_linearized(cpl, profile, Space::full);
  Eigen::VectorXd stacked(4 * profile.n);
  for (int comp = 0; comp < 4; ++comp) {
    stacked.segment(comp * profile.n, profile.n) =
        hillspec::to_coeffs(basis, Space::full, theta.col(comp));
  }
  const Eigen::VectorXd image = l_matrix * stacked;
  for (int comp = 0; comp < 4; ++comp) {
    const Eigen::VectorXd from_matrix = hillspec::to_grid(
        basis, Space::full, image.segment(comp * profile.n, profile.n));
    CHECK((from_matrix - applied.col(comp)).cwiseAbs().maxCoeff() < 1e-8);
  }
}
