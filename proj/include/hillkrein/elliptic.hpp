#pragma once

#include <utility>

namespace hillkrein::elliptic {

/// Real elliptic modulus k, 0 <= k < 1. The whole library works in the
/// modulus convention (K(k), E(k), sn(x,k), ...), never the parameter
/// m = k^2; the conversion is a classic source of silent errors, so the
/// convention is pinned here at the API boundary.
class Modulus {
public:
  explicit Modulus(double k);
  double value() const { return k_; }

private:
  double k_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Complete elliptic integrals of the first and second kind, (K(k), E(k)),
/// by arithmetic-geometric-mean iteration. Relative error ~1e-15.
std::pair<double, double> complete_integrals(Modulus k);

double complete_k(Modulus k);
double complete_e(Modulus k);

/// Complete elliptic integral of the third kind,
///   Pi(n, k) = int_0^{pi/2} dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t)),
/// for characteristic n < 1, via Carlson symmetric forms R_F and R_J.
double ellint_pi(double n, Modulus k);

/// Jacobi elliptic functions sn, cn, dn at argument x. Accepts 0 <= k <= 1;
/// k = 1 is the hyperbolic degenerate (tanh, sech, sech).
JacobiTriple jacobi(double x, double k);

// Carlson symmetric integrals (exposed for the third-kind route and tests).
double carlson_rf(double x, double y, double z);
double carlson_rc(double x, double y);
double carlson_rj(double x, double y, double z, double p);

}  // namespace hillkrein::elliptic
