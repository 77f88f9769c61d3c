#include "hillkrein/oracles.hpp"

#include <cmath>
#include <functional>

namespace hillkrein::oracles {

namespace {

constexpr double kHalfPi = 1.57079632679489661923132169163975144;

double simpson(const std::function<double(double)>& f, double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = simpson(f, a, mid);
  const double right = simpson(f, mid, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  // keep the per-interval tolerance above roundoff so recursion terminates
  const double child_tol = std::max(0.5 * tol, 1e-16);
  return adaptive(f, a, mid, left, child_tol, depth - 1) +
         adaptive(f, mid, b, right, child_tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  return adaptive(f, a, b, simpson(f, a, b), tol, 24);
}

}  // namespace

double agm_complete_k(double k) {
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  for (int it = 0; it < 40 && std::fabs(a - b) > 4e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kHalfPi / a;
}

double quad_complete_k(double k, double tol) {
  const double m = k * k;
  return integrate(
      [m](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - m * s * s);
      },
      0.0, kHalfPi, tol);
}

double quad_complete_e(double k, double tol) {
  const double m = k * k;
  return integrate(
      [m](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - m * s * s);
      },
      0.0, kHalfPi, tol);
}

double quad_ellint_pi(double n, double k, double tol) {
  const double m = k * k;
  return integrate(
      [m, n](double t) {
        const double s2 = std::sin(t) * std::sin(t);
        return 1.0 / ((1.0 - n * s2) * std::sqrt(1.0 - m * s2));
      },
      0.0, kHalfPi, tol);
}

JacobiOracle ode_jacobi(double x, double k, double step) {
  // sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn, from (0, 1, 1).
  const double m = k * k;
  double s = 0.0, c = 1.0, d = 1.0;
  const double direction = x >= 0.0 ? 1.0 : -1.0;
  const double target = std::fabs(x);
  const long steps = std::lround(std::ceil(target / step));
  const double h = steps > 0 ? direction * target / steps : 0.0;
  auto rhs = [m](double sv, double cv, double dv, double& ds, double& dc,
                 double& dd) {
    ds = cv * dv;
    dc = -sv * dv;
    dd = -m * sv * cv;
  };
  for (long i = 0; i < steps; ++i) {
    double k1s, k1c, k1d, k2s, k2c, k2d, k3s, k3c, k3d, k4s, k4c, k4d;
    rhs(s, c, d, k1s, k1c, k1d);
    rhs(s + 0.5 * h * k1s, c + 0.5 * h * k1c, d + 0.5 * h * k1d, k2s, k2c,
        k2d);
    rhs(s + 0.5 * h * k2s, c + 0.5 * h * k2c, d + 0.5 * h * k2d, k3s, k3c,
        k3d);
    rhs(s + h * k3s, c + h * k3c, d + h * k3d, k4s, k4c, k4d);
    s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
    c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
    d += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  return {s, c, d};
}

}  // namespace hillkrein::oracles
