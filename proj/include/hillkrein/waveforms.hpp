#pragma once

#include <Eigen/Dense>

#include <string>

namespace hillkrein::waveforms {

enum class ProfileKind { cnoidal, snoidal };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& s);

/// Closed-form parameter bundle of one L-periodic standing wave.
///
/// The auxiliary (theta = 1) wave solves -phi'' + omega phi - phi^5 = 0; the
/// coupled-system wave is theta times it, theta = (kappa + gamma B^3)^(-1/4).
struct WaveParams {
  double k;        // elliptic modulus, in (0,1)
  double L;        // period
  double a;        // cnoidal amplitude parameter
  double q;        // cnoidal characteristic, in (-2,-1)
  double a_tilde;  // snoidal amplitude parameter
  double q_tilde;  // snoidal characteristic, in (2/3,1)
  double omega;    // wave frequency, 16 K(k)^2 sqrt(k^4-k^2+1) / L^2
  double theta;    // scaling factor (kappa + gamma B^3)^(-1/4)
  double kappa, gamma, B;  // coupling constants behind theta
};

struct GridProfile {
  ProfileKind kind;
  int n;  // even sample count
  Eigen::VectorXd x;     // nodes j L / n
  Eigen::VectorXd phi;   // theta-scaled wave values
  Eigen::VectorXd dphi;  // spectral first derivative
  WaveParams params;
};

WaveParams wave_params(double k, double L, double kappa, double gamma,
                       double B);

/// Pointwise closed-form evaluation of the theta-scaled wave.
double eval_profile(ProfileKind kind, const WaveParams& params, double x);

GridProfile sample_profile(ProfileKind kind, const WaveParams& params, int n);

/// Sup norm of -phi'' + omega phi - (kappa + gamma B^3) phi^5 with phi''
/// computed spectrally; near zero certifies that the sampled profile solves
/// the coupled-system ODE.
double ode_residual(const GridProfile& profile, double kappa, double gamma,
                    double B);

struct MassSlopes {
  double mass;          // ||phi||^2 closed form, theta = 1
  double dmass_dk;      // d/dk of the above
  double domega_dk;     // d omega/dk
  double dmass_domega;  // chain-rule quotient
};

/// Closed-form mass of the theta = 1 wave and its slopes in k and omega.
/// All three slopes are strictly positive on k in (0,1); multiplying by
/// theta^2 gives the scaled-wave values.
MassSlopes mass_and_slopes(double k, double L);

/// mass_and_slopes rescaled to the coupled wave phi = theta phi_hat: every
/// field picks up theta^2 (signs are unchanged).
MassSlopes scaled_mass_and_slopes(const WaveParams& params);

double omega_of_k(double k, double L);

/// Invert the monotone map k -> omega(k; L) by bisection to 1e-12 in k.
double k_of_omega(double omega, double L);

}  // namespace hillkrein::waveforms
