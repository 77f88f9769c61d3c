#include "hillkrein/waveforms.hpp"

#include "hillkrein/elliptic.hpp"
#include "hillkrein/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hillkrein::waveforms {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double radical(double k) { return std::sqrt(k * k * k * k - k * k + 1.0); }
}  // namespace

std::string to_string(ProfileKind kind) {
  return kind == ProfileKind::cnoidal ? "cnoidal" : "snoidal";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "cnoidal") return ProfileKind::cnoidal;
  if (s == "snoidal") return ProfileKind::snoidal;
  throw std::invalid_argument("unknown profile kind: " + s);
}

WaveParams wave_params(double k, double L, double kappa, double gamma,
                       double B) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("wave_params: modulus must lie in (0,1)");
  }
  if (!(L > 0.0)) throw std::domain_error("wave_params: period must be > 0");
  const double coupling = kappa + gamma * B * B * B;
  if (!(coupling > 0.0)) {
    throw std::domain_error(
        "wave_params: kappa + gamma B^3 must be positive (theta undefined); "
        "B = -1 requires gamma < kappa");
  }

  WaveParams p;
  p.k = k;
  p.L = L;
  p.kappa = kappa;
  p.gamma = gamma;
  p.B = B;
  const double big_k = elliptic::complete_k(elliptic::Modulus(k));
  const double r = radical(k);
  p.a = 2.0 / L *
        std::pow((2.0 - k * k + 2.0 * r) * L * L * big_k * big_k, 0.25);
  p.q = -1.0 + k * k - r;
  p.a_tilde = -p.a * std::sqrt(1.0 - k * k) / std::sqrt(1.0 - p.q);
  p.q_tilde = (k * k - p.q) / (1.0 - p.q);
  p.omega = 16.0 * big_k * big_k * r / (L * L);
  p.theta = 1.0 / std::pow(coupling, 0.25);
  return p;
}

double eval_profile(ProfileKind kind, const WaveParams& p, double x) {
  const double big_k = elliptic::complete_k(elliptic::Modulus(p.k));
  const auto jac = elliptic::jacobi(4.0 * big_k * x / p.L, p.k);
  const double sn2 = jac.sn * jac.sn;
  if (kind == ProfileKind::cnoidal) {
    const double denom = 1.0 - p.q * sn2;
    if (!(denom > 0.0)) {
      throw std::domain_error("cnoidal profile: 1 - q sn^2 <= 0");
    }
    return p.theta * p.a * jac.cn / std::sqrt(denom);
  }
  const double denom = 1.0 - p.q_tilde * sn2;
  if (!(denom > 0.0)) {
    throw std::domain_error("snoidal profile: 1 - q~ sn^2 <= 0");
  }
  return p.theta * p.a_tilde * jac.sn / std::sqrt(denom);
}

GridProfile sample_profile(ProfileKind kind, const WaveParams& params, int n) {
  if (n < 32 || n % 2 != 0) {
    throw std::invalid_argument("sample_profile: N must be even and >= 32");
  }
  GridProfile profile;
  profile.kind = kind;
  profile.n = n;
  profile.params = params;
  grid::TrigBasis basis(n, params.L);
  profile.x = basis.nodes();
  profile.phi.resize(n);
  for (int j = 0; j < n; ++j) {
    profile.phi[j] = eval_profile(kind, params, profile.x[j]);
  }
  profile.dphi = basis.derivative(profile.phi);
  return profile;
}

double ode_residual(const GridProfile& profile, double kappa, double gamma,
                    double B) {
  const double coupling = kappa + gamma * B * B * B;
  grid::TrigBasis basis(profile.n, profile.params.L);
  const Eigen::VectorXd d2 = basis.second_derivative(profile.phi);
  double worst = 0.0;
  for (int j = 0; j < profile.n; ++j) {
    const double phi = profile.phi[j];
    const double res = -d2[j] + profile.params.omega * phi -
                       coupling * phi * phi * phi * phi * phi;
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

MassSlopes mass_and_slopes(double k, double L) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("mass_and_slopes: modulus must lie in (0,1)");
  }
  const elliptic::Modulus mod(k);
  const auto [big_k, big_e] = elliptic::complete_integrals(mod);
  const double r = radical(k);
  const double q = -1.0 + k * k - r;
  const double a2 =
      4.0 / (L * L) *
      std::sqrt((2.0 - k * k + 2.0 * r) * L * L * big_k * big_k);
  const double pi3 = elliptic::ellint_pi(q, mod);

  MassSlopes out;
  out.mass = a2 * L / big_k * (pi3 * (q - 1.0) + big_k) / q;

  const double k2 = k * k, k4 = k2 * k2, k6 = k4 * k2, k8 = k4 * k4;
  const double poly_a = (-12.0 * k6 + 42.0 * k4 - 56.0 * k2 + 32.0) * r +
                        (12.0 * k8 - 48.0 * k6 + 82.0 * k4 - 72.0 * k2 + 32.0);
  const double poly_b = (-18.0 * k4 + 40.0 * k2 - 32.0) * r +
                        (18.0 * k6 - 50.0 * k4 + 56.0 * k2 - 32.0);
  const double denom = r * std::sqrt(2.0 - k2 + 2.0 * r) *
                       (k2 - 1.0 - r) * (k2 - 1.0 - r) * k * (1.0 + r);
  out.dmass_dk = (poly_a * big_k + poly_b * big_e) / denom;

  out.domega_dk = 16.0 * big_k / (L * L * (1.0 - k2) * k * r) *
                  ((2.0 * k4 - 2.0 * k2 + 2.0) * big_e +
                   (-k4 + 3.0 * k2 - 2.0) * big_k);
  out.dmass_domega = out.dmass_dk / out.domega_dk;
  return out;
}

MassSlopes scaled_mass_and_slopes(const WaveParams& params) {
  MassSlopes s = mass_and_slopes(params.k, params.L);
  const double theta2 = params.theta * params.theta;
  s.mass *= theta2;
  s.dmass_dk *= theta2;
  s.dmass_domega *= theta2;
  return s;
}

double omega_of_k(double k, double L) {
  const double big_k = elliptic::complete_k(elliptic::Modulus(k));
  return 16.0 * big_k * big_k * radical(k) / (L * L);
}

double k_of_omega(double omega, double L) {
  const double floor = 4.0 * kPi * kPi / (L * L);
  if (!(omega > floor)) {
    throw std::domain_error("k_of_omega: omega must exceed 4 pi^2 / L^2");
  }
  double lo = 1e-9, hi = 1.0 - 1e-12;
  if (omega >= omega_of_k(hi, L)) {
    throw std::domain_error("k_of_omega: omega beyond representable range");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (omega_of_k(mid, L) < omega ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hillkrein::waveforms
