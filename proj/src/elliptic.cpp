#include "hillkrein/elliptic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hillkrein::elliptic {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

Modulus::Modulus(double k) : k_(k) {
  if (!std::isfinite(k) || k < 0.0 || k >= 1.0) {
    throw std::domain_error("elliptic modulus must satisfy 0 <= k < 1, got " +
                            std::to_string(k));
  }
}

std::pair<double, double> complete_integrals(Modulus mod) {
  const double k = mod.value();
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 1.0;
  for (int it = 0; it < 64 && c > 1e-17 * a; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    sum += 0.5 * pow2 * c * c;
  }
  const double big_k = kPi / (2.0 * a);
  const double big_e = big_k * (1.0 - sum);
  return {big_k, big_e};
}

double complete_k(Modulus k) { return complete_integrals(k).first; }
double complete_e(Modulus k) { return complete_integrals(k).second; }

double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 2.5e-4;
  double xt = x, yt = y, zt = z;
  double mu = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rc(double x, double y) {
  constexpr double errtol = 4e-4;
  double xt = x, yt = y;
  double mu = 0.0, s = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    mu = (xt + 2.0 * yt) / 3.0;
    s = (yt - xt) / (3.0 * mu);
    if (std::fabs(s) < errtol) break;
  }
  return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) /
         std::sqrt(mu);
}

double carlson_rj(double x, double y, double z, double p) {
  constexpr double errtol = 2.5e-4;
  double xt = x, yt = y, zt = z, pt = p;
  double sum = 0.0, fac = 1.0;
  double mu = 0.0, dx = 0.0, dy = 0.0, dz = 0.0, dp = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    const double alpha = pt * (sx + sy + sz) + sx * sy * sz;
    const double beta = pt * (pt + lam) * (pt + lam);
    sum += fac * carlson_rc(alpha * alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    pt = 0.25 * (pt + lam);
    mu = (xt + yt + zt + 2.0 * pt) / 5.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    dp = (mu - pt) / mu;
    if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz),
                  std::fabs(dp)}) < errtol)
      break;
  }
  const double ea = dx * (dy + dz) + dy * dz;
  const double eb = dx * dy * dz;
  const double ec = dp * dp;
  const double ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  const double series =
      1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * ee) +
      eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0)) +
      dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0) - eb * dp / 3.0;
  return 3.0 * sum + fac * series / (mu * std::sqrt(mu));
}

double ellint_pi(double n, Modulus mod) {
  if (!std::isfinite(n) || n >= 1.0) {
    throw std::domain_error("ellint_pi requires characteristic n < 1, got " +
                            std::to_string(n));
  }
  const double k = mod.value();
  const double kc2 = (1.0 - k) * (1.0 + k);
  const double rf = carlson_rf(0.0, kc2, 1.0);
  if (n == 0.0) return rf;
  return rf + (n / 3.0) * carlson_rj(0.0, kc2, 1.0, 1.0 - n);
}

JacobiTriple jacobi(double x, double k) {
  if (!std::isfinite(x)) throw std::domain_error("jacobi: non-finite argument");
  if (!std::isfinite(k) || k < 0.0 || k > 1.0) {
    throw std::domain_error("jacobi requires 0 <= k <= 1, got " +
                            std::to_string(k));
  }
  if (k == 0.0) return {std::sin(x), std::cos(x), 1.0};
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(x);
    return {std::tanh(x), sech, sech};
  }

  // Descending Landen / AGM scale, then backward phase recursion
  // (Abramowitz & Stegun 16.4).
  double a[64], c[64];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int n = 0;
  while (n < 62 && std::fabs(c[n]) > 1e-17 * a[n]) {
    ++n;
    a[n] = 0.5 * (a[n - 1] + b);
    c[n] = 0.5 * (a[n - 1] - b);
    b = std::sqrt(a[n - 1] * b);
  }
  double phi = std::ldexp(a[n] * x, n);
  double phi_prev = phi;  // phi_1 after the loop ends
  for (int j = n; j >= 1; --j) {
    const double s = c[j] * std::sin(phi) / a[j];
    const double t = std::asin(std::clamp(s, -1.0, 1.0));
    phi_prev = phi;
    phi = 0.5 * (t + phi);
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // A&S 16.4.3: dn = cos(phi_0) / cos(phi_1 - phi_0). Near the quarter
  // period cos(phi_0) ~ 0 and the quotient degrades, so fall back to the
  // defining identity, which is stable there.
  const double denom = std::cos(phi_prev - phi);
  double dn;
  if (std::fabs(denom) > 0.1) {
    dn = cn / denom;
  } else {
    dn = std::sqrt(1.0 - k * k * sn * sn);
  }
  return {sn, cn, dn};
}

}  // namespace hillkrein::elliptic
