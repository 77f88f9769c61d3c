#include "hillkrein/hillspec.hpp"

#include "hillkrein/eig.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hillkrein::hillspec {

std::string to_string(Space s) { return s == Space::full ? "full" : "odd"; }

Space space_from_string(const std::string& s) {
  if (s == "full") return Space::full;
  if (s == "odd") return Space::odd;
  throw std::invalid_argument("unknown symmetry space: " + s);
}

int space_dim(int n, Space space) {
  return space == Space::full ? n : n / 2 - 1;
}

Eigen::VectorXd to_coeffs(const grid::TrigBasis& basis, Space space,
                          const Eigen::VectorXd& values) {
  Eigen::VectorXd full = basis.analyze(values);
  if (space == Space::full) return full;
  const int half = basis.size() / 2;
  const double even_mass = full.head(half + 1).norm();
  const double total = std::max(full.norm(), 1e-300);
  if (even_mass > 1e-8 * total) {
    throw std::invalid_argument(
        "odd-sector projection: function has even-component mass " +
        std::to_string(even_mass / total));
  }
  return full.segment(half + 1, half - 1);
}

Eigen::VectorXd to_grid(const grid::TrigBasis& basis, Space space,
                        const Eigen::VectorXd& coeffs) {
  if (space == Space::full) return basis.synthesize(coeffs);
  const int half = basis.size() / 2;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(basis.size());
  full.segment(half + 1, half - 1) = coeffs;
  return basis.synthesize(full);
}

OperatorPieces operator_pieces(const waveforms::GridProfile& profile,
                               Space space) {
  if (space == Space::odd && profile.kind != waveforms::ProfileKind::snoidal) {
    throw std::invalid_argument(
        "odd sector requires a snoidal profile (odd wave, even potential)");
  }
  const int n = profile.n;
  const double length = profile.params.L;
  const double omega = profile.params.omega;

  // Quartic moments from a 2N closed-form resampling.
  const int m_fine = 2 * n;
  Eigen::VectorXd quart(m_fine);
  for (int j = 0; j < m_fine; ++j) {
    const double xj = length * j / m_fine;
    const double v = waveforms::eval_profile(profile.kind, profile.params, xj);
    quart[j] = v * v * v * v;
  }
  const grid::Moments mom = grid::fourier_moments(quart, n);
  const auto& wc = mom.cos_m;
  const auto& ws = mom.sin_m;

  const double wave0 = 2.0 * M_PI / length;
  auto free_term = [&](int m) { return omega + wave0 * wave0 * m * m; };
  auto ws_signed = [&](int m) {
    return m > 0 ? ws[m] : (m < 0 ? -ws[-m] : 0.0);
  };

  OperatorPieces pieces;
  const int half = n / 2;
  if (space == Space::odd) {
    const int dim = half - 1;
    pieces.free_diag.resize(dim);
    pieces.quartic.resize(dim, dim);
    for (int i = 1; i <= dim; ++i) {
      pieces.free_diag[i - 1] = free_term(i);
      for (int j = i; j <= dim; ++j) {
        const double v = wc[j - i] - wc[i + j];
        pieces.quartic(i - 1, j - 1) = v;
        pieces.quartic(j - 1, i - 1) = v;
      }
    }
    return pieces;
  }

  pieces.free_diag.resize(n);
  pieces.quartic.resize(n, n);
  auto& w = pieces.quartic;
  pieces.free_diag[0] = free_term(0);
  w(0, 0) = wc[0];
  const double root2 = std::sqrt(2.0);
  for (int j = 1; j <= half; ++j) {
    w(0, j) = w(j, 0) = root2 * wc[j];
  }
  for (int j = 1; j < half; ++j) {
    w(0, half + j) = w(half + j, 0) = root2 * ws[j];
  }
  for (int i = 1; i <= half; ++i) {
    pieces.free_diag[i] = free_term(i);
    for (int j = i; j <= half; ++j) {
      const double v = wc[j - i] + wc[i + j];
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  for (int i = 1; i < half; ++i) {
    pieces.free_diag[half + i] = free_term(i);
    for (int j = i; j < half; ++j) {
      const double v = wc[j - i] - wc[i + j];
      w(half + i, half + j) = v;
      w(half + j, half + i) = v;
    }
  }
  for (int i = 1; i < half; ++i) {     // sine row
    for (int j = 1; j <= half; ++j) {  // cosine column
      const double v = ws[i + j] + ws_signed(i - j);
      w(half + i, j) = v;
      w(j, half + i) = v;
    }
  }
  return pieces;
}

Eigen::MatrixXd assemble_hill(double beta,
                              const waveforms::GridProfile& profile,
                              Space space) {
  const OperatorPieces pieces = operator_pieces(profile, space);
  Eigen::MatrixXd h = -beta * pieces.quartic;
  h.diagonal() += pieces.free_diag;
  return h;
}

HillSpectrum spectrum_counts(const Eigen::MatrixXd& h, double tol_zero,
                             const waveforms::GridProfile& profile,
                             Space space, double beta) {
  HillSpectrum spec;
  spec.beta = beta;
  spec.space = space;
  spec.grid_n = profile.n;
  spec.length = profile.params.L;
  spec.tol_zero = tol_zero;
  eig::symmetric(h, spec.eigenvalues, spec.eigenvectors);

  double min_nonzero = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lam = spec.eigenvalues[i];
    if (lam < -tol_zero) {
      ++spec.n_count;
    } else if (std::fabs(lam) <= tol_zero) {
      ++spec.z_count;
    }
    if (std::fabs(lam) > tol_zero) {
      min_nonzero = std::min(min_nonzero, std::fabs(lam));
    }
  }
  spec.resolved = min_nonzero > 100.0 * tol_zero;

  grid::TrigBasis basis(profile.n, profile.params.L);
  const double norm_phi = profile.phi.norm();
  const double norm_dphi = profile.dphi.norm();
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    if (std::fabs(spec.eigenvalues[i]) > tol_zero) continue;
    const Eigen::VectorXd v = to_grid(basis, space, spec.eigenvectors.col(i));
    const double nv = v.norm();
    if (nv == 0.0) continue;
    spec.kernel_overlap_phi = std::max(
        spec.kernel_overlap_phi, std::fabs(v.dot(profile.phi)) / (nv * norm_phi));
    spec.kernel_overlap_phi_prime =
        std::max(spec.kernel_overlap_phi_prime,
                 std::fabs(v.dot(profile.dphi)) / (nv * norm_dphi));
  }

  spec.profile_kind = profile.kind;
  const int n_parities = std::min<int>(6, static_cast<int>(spec.eigenvalues.size()));
  auto classify = [&](const Eigen::VectorXd& v, auto mirror_index) {
    const int n = profile.n;
    double even_res = 0.0, odd_res = 0.0;
    for (int j = 0; j < n; ++j) {
      const double mirror = v[mirror_index(j)];
      even_res += (mirror - v[j]) * (mirror - v[j]);
      odd_res += (mirror + v[j]) * (mirror + v[j]);
    }
    const double scale = std::max(v.squaredNorm(), 1e-300);
    even_res = std::sqrt(even_res / scale);
    odd_res = std::sqrt(odd_res / scale);
    if (even_res < 1e-6) return Parity::even;
    if (odd_res < 1e-6) return Parity::odd;
    return Parity::mixed;
  };
  const int n = profile.n;
  for (int i = 0; i < n_parities; ++i) {
    const Eigen::VectorXd v = to_grid(basis, space, spec.eigenvectors.col(i));
    spec.parities.push_back(classify(v, [n](int j) { return (n - j) % n; }));
    spec.parities_quarter.push_back(
        classify(v, [n](int j) { return ((n / 2 - j) % n + n) % n; }));
  }
  return spec;
}

Eigen::VectorXd eigenvector_on_grid(const HillSpectrum& spec, int index) {
  grid::TrigBasis basis(spec.grid_n, spec.length);
  return to_grid(basis, spec.space, spec.eigenvectors.col(index));
}

ComparisonReport comparison_check(const std::vector<HillSpectrum>& spectra) {
  ComparisonReport report;
  for (std::size_t i = 0; i + 1 < spectra.size(); ++i) {
    const auto& lo = spectra[i];      // smaller beta
    const auto& hi = spectra[i + 1];  // larger beta
    if (hi.beta < lo.beta) {
      report.pass = false;
      report.first_violation = static_cast<int>(i);
      report.detail = "spectra not ordered by beta";
      return report;
    }
    const double scale =
        std::max(1.0, lo.eigenvalues.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;
    for (int m = 0; m < lo.eigenvalues.size(); ++m) {
      if (hi.eigenvalues[m] > lo.eigenvalues[m] + tol) {
        report.pass = false;
        report.first_violation = static_cast<int>(i);
        std::ostringstream msg;
        msg << "eigenvalue " << m << " increased from beta " << lo.beta
            << " to beta " << hi.beta;
        report.detail = msg.str();
        return report;
      }
    }
    if (hi.n_count < lo.n_count) {
      report.pass = false;
      report.first_violation = static_cast<int>(i);
      report.detail = "negative count decreased with beta";
      return report;
    }
  }
  return report;
}

ParityReport parity_floquet_check(const HillSpectrum& spec,
                                  bool expect_second_odd) {
  ParityReport report;
  if (spec.parities.empty()) {
    report.pass = false;
    report.detail = "no eigenvectors classified";
    return report;
  }
  if (spec.parities[0] != Parity::even) {
    report.pass = false;
    report.detail = "ground state is not even";
    return report;
  }
  // The odd-restriction argument reads parity at the wave's odd center:
  // x = 0 for a snoidal profile, x = L/4 for a cnoidal one.
  const auto& odd_frame =
      spec.profile_kind == waveforms::ProfileKind::snoidal
          ? spec.parities
          : spec.parities_quarter;
  if (expect_second_odd &&
      (odd_frame.size() < 2 || odd_frame[1] != Parity::odd)) {
    report.pass = false;
    report.detail = "second eigenfunction is not odd at the odd center";
    return report;
  }
  return report;
}

}  // namespace hillkrein::hillspec
