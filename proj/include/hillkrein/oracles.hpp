#pragma once

namespace hillkrein::oracles {

// Independent reference implementations used only to verify the production
// paths in the self-test and unit suites. They share no code with
// hillkrein::elliptic: K comes from a bare arithmetic-geometric mean, the
// integrals from adaptive Simpson quadrature of the defining integrands, and
// the Jacobi functions from Runge-Kutta integration of their ODE system.

double agm_complete_k(double k);

double quad_complete_k(double k, double tol = 1e-14);
double quad_complete_e(double k, double tol = 1e-14);
double quad_ellint_pi(double n, double k, double tol = 1e-13);

struct JacobiOracle {
  double sn, cn, dn;
};
JacobiOracle ode_jacobi(double x, double k, double step = 1e-4);

}  // namespace hillkrein::oracles
