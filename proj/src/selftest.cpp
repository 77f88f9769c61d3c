#include "hillkrein/selftest.hpp"

#include "hillkrein/coupling.hpp"
#include "hillkrein/dynspec.hpp"
#include "hillkrein/elliptic.hpp"
#include "hillkrein/grid.hpp"
#include "hillkrein/hillspec.hpp"
#include "hillkrein/kreinindex.hpp"
#include "hillkrein/oracles.hpp"
#include "hillkrein/report.hpp"
#include "hillkrein/waveforms.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

namespace hillkrein::selftest {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

using coupling::Branch;
using hillspec::Space;
using waveforms::ProfileKind;

struct Check {
  bool pass = true;
  std::ostringstream log;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << "    FAILED: " << what << "\n";
    }
  }
};

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

struct TheoremConfig {
  Branch branch;
  double gamma;
  Space space;
  ProfileKind kind;
  double k;
  int n_L, z_L, n_V, K_Ham;
  const char* verdict;
};

std::vector<TheoremConfig> theorem_configs() {
  std::vector<TheoremConfig> configs;
  for (double k : {0.3, 0.5, 0.8}) {
    configs.push_back({Branch::one, 2.0, Space::full, ProfileKind::cnoidal, k,
                       4, 3, 1, 3, "unstable"});
  }
  const double k0 = 0.5;
  configs.push_back({Branch::bplus, 3.0, Space::odd, ProfileKind::snoidal, k0,
                     2, 1, 1, 1, "unstable"});
  configs.push_back({Branch::bminus, 3.0, Space::odd, ProfileKind::snoidal, k0,
                     2, 1, 1, 1, "unstable"});
  configs.push_back({Branch::one, 0.0, Space::odd, ProfileKind::snoidal, k0, 2,
                     2, 2, 0, "stable"});
  configs.push_back({Branch::one, 1.0, Space::odd, ProfileKind::snoidal, k0, 2,
                     1, 1, 1, "unstable"});
  configs.push_back({Branch::one, 2.0, Space::odd, ProfileKind::snoidal, k0, 1,
                     2, 1, 0, "stable"});
  configs.push_back({Branch::one, 3.0, Space::odd, ProfileKind::snoidal, k0, 1,
                     1, 1, 0, "stable"});
  configs.push_back({Branch::minus_one, 0.0, Space::odd, ProfileKind::snoidal,
                     k0, 2, 2, 2, 0, "stable"});
  return configs;
}

struct Context {
  Options options;
  std::vector<StabilityReport> theorem_reports;

  kreinindex::ReportOptions report_options(bool with_jl) const {
    kreinindex::ReportOptions opts;
    opts.tol_zero_override = options.tol_zero_override;
    opts.with_jl = with_jl;
    // a pinned tolerance is diagnostic; grid doubling cannot rescue it
    if (opts.tol_zero_override > 0.0) opts.max_doublings = 0;
    return opts;
  }
};

// ---------------------------------------------------------------- criterion 1
Check criterion_elliptic(Context&) {
  Check c;
  using elliptic::Modulus;

  for (int j = 0; j < 100; ++j) {
    const double k = 0.95 * j / 99.0;
    const auto [big_k, big_e] = elliptic::complete_integrals(Modulus(k));
    c.require(rel_close(big_k, oracles::quad_complete_k(k), 1e-12),
              "K(k) vs quadrature oracle at k=" + std::to_string(k));
    c.require(rel_close(big_k, oracles::agm_complete_k(k), 1e-13),
              "K(k) vs AGM oracle at k=" + std::to_string(k));
    c.require(rel_close(big_e, oracles::quad_complete_e(k), 1e-12),
              "E(k) vs quadrature oracle at k=" + std::to_string(k));
    c.require(big_e <= big_k + 1e-15, "E <= K");
  }
  {
    const auto [k0, e0] = elliptic::complete_integrals(Modulus(0.0));
    c.require(rel_close(k0, kPi / 2.0, 1e-15) && rel_close(e0, kPi / 2.0, 1e-15),
              "K(0) = E(0) = pi/2");
    const auto [k5, e5] = elliptic::complete_integrals(Modulus(0.5));
    c.require(rel_close(k5, 1.6857503548126, 1e-12), "frozen K(0.5)");
    c.require(rel_close(e5, 1.4674622093395, 1e-12), "frozen E(0.5)");
    bool threw = false;
    try {
      elliptic::complete_integrals(Modulus(1.0));
    } catch (const std::domain_error&) {
      threw = true;
    }
    c.require(threw, "k = 1 rejected by the integrals");
    double prev_gap = 1.0;
    for (int j = 4; j <= 8; ++j) {
      const double kj = 1.0 - std::pow(10.0, -j);
      const double gap =
          std::fabs(elliptic::complete_e(Modulus(kj)) - 1.0);
      c.require(gap < prev_gap, "E(k) -> 1 as k -> 1");
      prev_gap = gap;
    }
  }

  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double n = -1.9 + 2.7 * i / 9.0;  // up to 0.8
      const double k = 0.05 + 0.85 * j / 9.0;
      const double val = elliptic::ellint_pi(n, Modulus(k));
      c.require(rel_close(val, oracles::quad_ellint_pi(n, k), 1e-11),
                "Pi(n,k) vs quadrature oracle");
    }
  }
  c.require(rel_close(elliptic::ellint_pi(0.0, Modulus(0.37)),
                      elliptic::complete_k(Modulus(0.37)), 1e-13),
            "Pi(0,k) = K(k)");
  c.require(rel_close(elliptic::ellint_pi(-2.0, Modulus(0.0)),
                      kPi / (2.0 * std::sqrt(3.0)), 1e-13),
            "Pi(-2,0) closed form");
  {
    // increasing in n for fixed k
    double prev = -1.0;
    for (int i = 0; i < 12; ++i) {
      const double n = -1.8 + 2.5 * i / 11.0;
      const double val = elliptic::ellint_pi(n, Modulus(0.6));
      c.require(i == 0 || val > prev, "Pi increasing in n");
      prev = val;
    }
  }

  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uk(0.0, 0.95);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(rng), k = uk(rng);
    const auto jac = elliptic::jacobi(x, k);
    const auto ref = oracles::ode_jacobi(x, k);
    c.require(std::fabs(jac.sn - ref.sn) < 1e-10 &&
                  std::fabs(jac.cn - ref.cn) < 1e-10 &&
                  std::fabs(jac.dn - ref.dn) < 1e-10,
              "jacobi vs ODE oracle at x=" + std::to_string(x) +
                  ", k=" + std::to_string(k));
    c.require(std::fabs(jac.sn * jac.sn + jac.cn * jac.cn - 1.0) < 1e-12,
              "sn^2 + cn^2 = 1");
    c.require(
        std::fabs(jac.dn * jac.dn + k * k * jac.sn * jac.sn - 1.0) < 1e-12,
        "dn^2 + k^2 sn^2 = 1");
  }
  {
    const auto j0 = elliptic::jacobi(1.0, 0.0);
    c.require(rel_close(j0.sn, std::sin(1.0), 1e-14), "sn(x,0) = sin x");
    const auto j1 = elliptic::jacobi(1.0, 1.0);
    c.require(rel_close(j1.sn, std::tanh(1.0), 1e-14), "sn(x,1) = tanh x");
    const double quarter = elliptic::complete_k(Modulus(0.7));
    const auto jq = elliptic::jacobi(quarter, 0.7);
    c.require(std::fabs(jq.cn) < 1e-10 && std::fabs(jq.sn - 1.0) < 1e-10,
              "quarter-period identities");
    const auto before = elliptic::jacobi(0.9, 0.7);
    const auto after = elliptic::jacobi(0.9 + 4.0 * quarter, 0.7);
    c.require(std::fabs(before.sn - after.sn) < 1e-10,
              "periodicity sn(x + 4K) = sn(x)");
  }
  return c;
}

// ---------------------------------------------------------------- criterion 2
Check criterion_existence(Context&) {
  Check c;
  for (double length : {kPi, kTwoPi, 10.0}) {
    for (int j = 1; j <= 9; ++j) {
      const double k = 0.1 * j;
      const auto params = waveforms::wave_params(k, length, 1.0, 0.0, 1.0);
      c.require(params.q > -2.0 && params.q < -1.0, "q in (-2,-1)");
      c.require(params.q_tilde > 2.0 / 3.0 && params.q_tilde < 1.0,
                "q~ in (2/3,1)");
      c.require(params.omega > 4.0 * kPi * kPi / (length * length),
                "omega above 4 pi^2 / L^2");
      const double tol = 1e-8 * std::max(1.0, params.omega);
      const auto cn = waveforms::sample_profile(ProfileKind::cnoidal, params, 256);
      const auto sn = waveforms::sample_profile(ProfileKind::snoidal, params, 256);
      c.require(waveforms::ode_residual(cn, 1.0, 0.0, 1.0) <= tol,
                "cnoidal ODE residual at k=" + std::to_string(k) +
                    ", L=" + std::to_string(length));
      c.require(waveforms::ode_residual(sn, 1.0, 0.0, 1.0) <= tol,
                "snoidal ODE residual");
      double shift_gap = 0.0;
      for (int i = 0; i < sn.n; ++i) {
        const double shifted = waveforms::eval_profile(
            ProfileKind::cnoidal, params, sn.x[i] + length / 4.0);
        shift_gap = std::max(shift_gap, std::fabs(sn.phi[i] - shifted));
      }
      c.require(shift_gap < 1e-10, "psi(x) = phi(x + L/4)");
    }
  }
  return c;
}

// ---------------------------------------------------------------- criterion 3
Check criterion_mass(Context&) {
  Check c;
  for (double k : {0.3, 0.5, 0.8}) {
    const auto params = waveforms::wave_params(k, kTwoPi, 1.0, 0.0, 1.0);
    const auto profile = waveforms::sample_profile(ProfileKind::cnoidal, params, 512);
    const double quad = grid::inner(profile.phi, profile.phi, kTwoPi);
    const auto slopes = waveforms::mass_and_slopes(k, kTwoPi);
    c.require(rel_close(slopes.mass, quad, 1e-9),
              "closed-form mass vs quadrature at k=" + std::to_string(k));
  }
  for (int j = 1; j <= 9; ++j) {
    const double k = 0.1 * j;
    const auto slopes = waveforms::mass_and_slopes(k, kTwoPi);
    const double h = 1e-6;
    const double fd = (waveforms::mass_and_slopes(k + h, kTwoPi).mass -
                       waveforms::mass_and_slopes(k - h, kTwoPi).mass) /
                      (2.0 * h);
    c.require(rel_close(slopes.dmass_dk, fd, 1e-5),
              "dmass/dk vs finite difference at k=" + std::to_string(k));
    const double fd_omega = (waveforms::omega_of_k(k + h, kTwoPi) -
                             waveforms::omega_of_k(k - h, kTwoPi)) /
                            (2.0 * h);
    c.require(rel_close(slopes.domega_dk, fd_omega, 1e-5),
              "domega/dk vs finite difference");
  }
  for (int j = 1; j <= 19; ++j) {
    const double k = 0.05 * j;
    const auto slopes = waveforms::mass_and_slopes(k, kTwoPi);
    c.require(slopes.dmass_dk > 0.0 && slopes.domega_dk > 0.0 &&
                  slopes.dmass_domega > 0.0,
              "positive slopes at k=" + std::to_string(k));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 4
Check criterion_scalar_counts(Context& ctx) {
  Check c;
  const double kappa = 1.0, gamma = 1.0, B = 1.0;
  const double beta1 = 5.0 * (kappa + gamma), beta2 = kappa + gamma;
  for (double k : {0.3, 0.5, 0.8}) {
    const auto params = waveforms::wave_params(k, kTwoPi, kappa, gamma, B);
    const double tau = ctx.options.tol_zero_override > 0.0
                           ? ctx.options.tol_zero_override
                           : 1e-6 * std::max(1.0, params.omega);
    for (int n : {256, 512}) {
      const auto cn = waveforms::sample_profile(ProfileKind::cnoidal, params, n);
      const auto sn = waveforms::sample_profile(ProfileKind::snoidal, params, n);

      const auto full1 = hillspec::spectrum_counts(
          hillspec::assemble_hill(beta1, cn, Space::full), tau, cn, Space::full,
          beta1);
      c.require(full1.resolved, "L1 spectrum resolved (kernel separation)");
      c.require(full1.n_count == 2 && full1.z_count == 1,
                "cnoidal full beta1: (n,z) = (2,1) at k=" + std::to_string(k) +
                    ", N=" + std::to_string(n));
      c.require(full1.kernel_overlap_phi_prime > 1.0 - 1e-6,
                "L1 kernel matches phi'");

      const auto full2 = hillspec::spectrum_counts(
          hillspec::assemble_hill(beta2, cn, Space::full), tau, cn, Space::full,
          beta2);
      c.require(full2.resolved, "L2 spectrum resolved (kernel separation)");
      c.require(full2.n_count == 1 && full2.z_count == 1,
                "cnoidal full beta2: (n,z) = (1,1)");
      c.require(full2.kernel_overlap_phi > 1.0 - 1e-6, "L2 kernel matches phi");

      const auto odd1 = hillspec::spectrum_counts(
          hillspec::assemble_hill(beta1, sn, Space::odd), tau, sn, Space::odd,
          beta1);
      c.require(odd1.n_count == 1 && odd1.z_count == 0,
                "snoidal odd beta1: (n,z) = (1,0)");
      const auto odd2 = hillspec::spectrum_counts(
          hillspec::assemble_hill(beta2, sn, Space::odd), tau, sn, Space::odd,
          beta2);
      c.require(odd2.n_count == 0 && odd2.z_count == 1,
                "snoidal odd beta2: (n,z) = (0,1)");
      c.require(odd2.kernel_overlap_phi > 1.0 - 1e-6,
                "L2,odd kernel matches psi");

      if (n == 256) {
        const auto p1 = hillspec::parity_floquet_check(full1, true);
        c.require(p1.pass, "cnoidal L1 parities (even, odd): " + p1.detail);
        const auto p2 = hillspec::parity_floquet_check(full2, false);
        c.require(p2.pass, "cnoidal L2 ground state even: " + p2.detail);
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------- criterion 5
Check criterion_sign_lemmas(Context&) {
  Check c;
  const double kappa = 1.0, gamma = 1.0, B = 1.0;
  for (double k : {0.3, 0.5, 0.8}) {
    const auto params = waveforms::wave_params(k, kTwoPi, kappa, gamma, B);
    const auto slopes = waveforms::mass_and_slopes(k, kTwoPi);
    const double theta2 = params.theta * params.theta;
    for (ProfileKind kind : {ProfileKind::cnoidal, ProfileKind::snoidal}) {
      const auto profile = waveforms::sample_profile(kind, params, 256);
      const double quad_i = kreinindex::quad_form_I(profile);
      c.require(quad_i < 0.0,
                "I < 0 (" + waveforms::to_string(kind) + ", k=" +
                    std::to_string(k) + ")");
      const double identity_gap =
          std::fabs(quad_i + 0.5 * theta2 * slopes.dmass_domega);
      c.require(identity_gap <= 1e-6 * std::fabs(quad_i),
                "I = -1/2 theta^2 dmass/domega (" + waveforms::to_string(kind) +
                    ")");
      const double quad_j = kreinindex::quad_form_J(profile);
      c.require(quad_j > 0.0, "J > 0 (" + waveforms::to_string(kind) + ")");
    }
  }
  return c;
}

// ------------------------------------------------------------ criteria 6 + 7
Check criterion_theorem(Context& ctx, Space which_space) {
  Check c;
  for (const auto& config : theorem_configs()) {
    if (config.space != which_space) continue;
    const auto report = kreinindex::stability_report(
        1.0, config.gamma, config.branch, config.k, kTwoPi, config.kind,
        config.space, ctx.report_options(true));
    std::ostringstream tag;
    tag << coupling::to_string(config.branch) << " gamma=" << config.gamma
        << " k=" << config.k << " " << hillspec::to_string(config.space);
    c.require(report.diagnostic.empty(),
              tag.str() + ": pipeline diagnostic: " + report.diagnostic);
    c.require(report.n_L == config.n_L,
              tag.str() + ": n_L=" + std::to_string(report.n_L) + " expected " +
                  std::to_string(config.n_L));
    c.require(report.z_L == config.z_L,
              tag.str() + ": z_L=" + std::to_string(report.z_L) + " expected " +
                  std::to_string(config.z_L));
    c.require(report.n_V == config.n_V,
              tag.str() + ": n_V=" + std::to_string(report.n_V) + " expected " +
                  std::to_string(config.n_V));
    c.require(report.K_Ham == config.K_Ham,
              tag.str() + ": K_Ham=" + std::to_string(report.K_Ham) +
                  " expected " + std::to_string(config.K_Ham));
    c.require(to_string(report.verdict) == config.verdict,
              tag.str() + ": verdict=" + to_string(report.verdict) +
                  " expected " + config.verdict);
    const double tol_real = dynspec::default_tol_real(report.omega);
    if (std::string(config.verdict) == "unstable") {
      c.require(report.jl_max_real > tol_real,
                tag.str() + ": JL max Re should exceed tol, got " +
                    std::to_string(report.jl_max_real));
    } else {
      c.require(report.jl_max_real <= tol_real,
                tag.str() + ": JL max Re should be within tol, got " +
                    std::to_string(report.jl_max_real));
    }
    ctx.theorem_reports.push_back(report);
  }
  return c;
}

// ---------------------------------------------------------------- criterion 8
Check criterion_inconclusive(Context& ctx) {
  Check c;
  struct Cell {
    Branch branch;
    double gamma;
    int K_Ham;
  };
  const std::vector<Cell> cells = {{Branch::bplus, 3.0, 4},
                                   {Branch::one, 1.0, 4},
                                   {Branch::one, 6.0, 2},
                                   {Branch::one, 0.0, 4}};
  for (const auto& cell : cells) {
    const auto report = kreinindex::stability_report(
        1.0, cell.gamma, cell.branch, 0.5, kTwoPi, ProfileKind::cnoidal,
        Space::full, ctx.report_options(false));
    std::ostringstream tag;
    tag << "cnoidal " << coupling::to_string(cell.branch)
        << " gamma=" << cell.gamma;
    c.require(report.diagnostic.empty(),
              tag.str() + ": diagnostic: " + report.diagnostic);
    c.require(report.K_Ham == cell.K_Ham,
              tag.str() + ": K_Ham=" + std::to_string(report.K_Ham) +
                  " expected " + std::to_string(cell.K_Ham));
    c.require(report.verdict == Verdict::inconclusive,
              tag.str() + ": verdict must be inconclusive, got " +
                  to_string(report.verdict));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 9
Check criterion_cross_validation(Context& ctx) {
  Check c;
  c.require(!ctx.theorem_reports.empty(), "theorem reports were collected");
  for (const auto& report : ctx.theorem_reports) {
    std::ostringstream tag;
    tag << coupling::to_string(report.branch) << " gamma=" << report.gamma
        << " k=" << report.k << " " << hillspec::to_string(report.space);
    c.require(report.jl_computed, tag.str() + ": JL cross-check missing");
    const bool krein_unstable = report.verdict == Verdict::unstable;
    const bool jl_unstable = report.jl_verdict == "unstable";
    c.require(krein_unstable == jl_unstable,
              tag.str() + ": Krein and JL verdicts disagree");
    c.require(report.jl_spectrum_symmetric,
              tag.str() + ": Hamiltonian spectral symmetry violated");
  }
  return c;
}

// --------------------------------------------------------------- criterion 10
Check criterion_robustness(Context& ctx) {
  Check c;
  std::mt19937 rng(20240817);
  for (const auto& config : theorem_configs()) {
    if (config.space == Space::full && config.k != 0.5) continue;  // one per k
    std::ostringstream tag;
    tag << coupling::to_string(config.branch) << " gamma=" << config.gamma
        << " " << hillspec::to_string(config.space);

    auto opts256 = ctx.report_options(false);
    auto opts512 = ctx.report_options(false);
    opts512.n = 512;
    const auto r256 = kreinindex::stability_report(
        1.0, config.gamma, config.branch, config.k, kTwoPi, config.kind,
        config.space, opts256);
    const auto r512 = kreinindex::stability_report(
        1.0, config.gamma, config.branch, config.k, kTwoPi, config.kind,
        config.space, opts512);
    c.require(r256.n_L == r512.n_L && r256.z_L == r512.z_L &&
                  r256.n_V == r512.n_V && r256.K_Ham == r512.K_Ham,
              tag.str() + ": integer outputs changed between N=256 and N=512");

    // Frame re-signing: flipping eigenvector signs is another valid frame;
    // n(V) must not move.
    const auto cpl = coupling::make_case(1.0, config.gamma, config.branch);
    const auto params =
        waveforms::wave_params(config.k, kTwoPi, 1.0, config.gamma, cpl.B);
    const auto profile = waveforms::sample_profile(config.kind, params, 256);
    const double tau = ctx.options.tol_zero_override > 0.0
                           ? ctx.options.tol_zero_override
                           : 1e-6 * std::max(1.0, params.omega);
    std::array<hillspec::HillSpectrum, 4> spectra;
    for (int i = 0; i < 4; ++i) {
      spectra[i] = hillspec::spectrum_counts(
          hillspec::assemble_hill(cpl.betas[i], profile, config.space), tau,
          profile, config.space, cpl.betas[i]);
    }
    const auto kernel = kreinindex::kernel_basis(cpl, profile, config.space);
    const auto frame = coupling::orthonormal_frame(cpl);
    const auto v0 = kreinindex::assemble_V(cpl, config.space, profile, frame,
                                           kernel, spectra);
    const int n_v0 = kreinindex::krein_verdict(r256.n_L, v0).n_V;
    for (int trial = 0; trial < 2; ++trial) {
      auto variant = frame;
      for (int col = 0; col < 4; ++col) {
        if (rng() & 1u) variant.U.col(col) = -variant.U.col(col);
      }
      const auto v1 = kreinindex::assemble_V(cpl, config.space, profile,
                                             variant, kernel, spectra);
      const int n_v1 = kreinindex::krein_verdict(r256.n_L, v1).n_V;
      c.require(n_v0 == n_v1, tag.str() + ": n(V) moved under frame re-signing");
    }
  }
  return c;
}

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;  // 0 = no stated budget
  std::function<Check(Context&)> body;
};

}  // namespace

int run(const Options& options, std::ostream& out) {
  Context ctx;
  ctx.options = options;

  std::vector<Criterion> criteria = {
      {1, "elliptic foundation vs independent oracles", 5.0,
       criterion_elliptic},
      {2, "existence of cnoidal/snoidal waves", 10.0, criterion_existence},
      {3, "mass lemma: closed form, slopes, signs", 10.0, criterion_mass},
      {4, "scalar Hill spectral counts", 60.0, criterion_scalar_counts},
      {5, "sign lemmas I < 0, J > 0 with mass identity", 30.0,
       criterion_sign_lemmas},
      {6, "cnoidal instability (B=1, gamma=2 kappa)", 60.0,
       [](Context& ctx) { return criterion_theorem(ctx, Space::full); }},
      {7, "snoidal theorem table (odd sector)", 180.0,
       [](Context& ctx) { return criterion_theorem(ctx, Space::odd); }},
      {8, "inconclusive cnoidal cells stay inconclusive", 0.0,
       criterion_inconclusive},
      {9, "Krein vs JL cross-validation", 0.0, criterion_cross_validation},
      {10, "robustness: grid refinement and frame re-signing", 0.0,
       criterion_robustness},
  };
  if (options.quick) {
    criteria.resize(3);
  }

  int failures = 0;
  for (auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.body(ctx);
    } catch (const std::exception& e) {
      check.pass = false;
      check.log << "    EXCEPTION: " << e.what() << "\n";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
      check.pass = false;
      check.log << "    FAILED: runtime " << elapsed << " s over the "
                << criterion.budget_seconds << " s budget\n";
    }
    out << (check.pass ? "[PASS]" : "[FAIL]") << " criterion "
        << criterion.number << ": " << criterion.label << " ("
        << static_cast<int>(elapsed * 1000.0) / 1000.0 << " s)" << std::endl;
    if (!check.pass) {
      out << check.log.str() << std::flush;
      ++failures;
    }
  }
  if (failures == 0) {
    out << "all criteria passed\n";
  } else {
    out << failures << " criteria failed\n";
  }
  return failures;
}

}  // namespace hillkrein::selftest
