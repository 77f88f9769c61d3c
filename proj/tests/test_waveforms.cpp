#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hillkrein/grid.hpp"
#include "hillkrein/waveforms.hpp"

#include <cmath>

using namespace hillkrein;
using waveforms::ProfileKind;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}

TEST_CASE("parameter maps hit the stated interval endpoints in the limits") {
  // k -> 0+: q -> -2, a -> 2 sqrt(pi/L), omega -> 4 pi^2/L^2, q~ -> 2/3
  const auto small = waveforms::wave_params(1e-4, kTwoPi, 1.0, 0.0, 1.0);
  CHECK(small.q == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(small.a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(small.omega == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(small.q_tilde == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(small.a_tilde ==
        doctest::Approx(-2.0 * std::sqrt(3.0) / 3.0 * std::sqrt(0.5))
            .epsilon(1e-6));

  // k -> 1-: q -> -1, q~ -> 1
  const auto big = waveforms::wave_params(1.0 - 1e-7, kTwoPi, 1.0, 0.0, 1.0);
  CHECK(big.q == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(big.q_tilde == doctest::Approx(1.0).epsilon(1e-5));

  // interval constraints across the range
  for (int j = 1; j <= 19; ++j) {
    const double k = 0.05 * j;
    const auto p = waveforms::wave_params(k, kTwoPi, 1.0, 0.0, 1.0);
    CHECK(p.q > -2.0);
    CHECK(p.q < -1.0);
    CHECK(p.q_tilde > 2.0 / 3.0);
    CHECK(p.q_tilde < 1.0);
    CHECK(p.a > 2.0 * std::sqrt(kPi / kTwoPi));
    CHECK(p.a_tilde < 0.0);
    CHECK(p.omega > 1.0);
  }
}

TEST_CASE("omega composes the frozen K(0.5) value") {
  const double frozen_k = 1.6857503548126;
  const double expected =
      16.0 * frozen_k * frozen_k * std::sqrt(0.8125) / (kTwoPi * kTwoPi);
  const auto p = waveforms::wave_params(0.5, kTwoPi, 1.0, 0.0, 1.0);
  CHECK(p.omega == doctest::Approx(expected).epsilon(1e-12));
  CHECK(p.theta == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("theta undefined when kappa + gamma B^3 <= 0") {
  CHECK_THROWS_AS(waveforms::wave_params(0.5, kTwoPi, 1.0, 2.0, -1.0),
                  std::domain_error);
  CHECK_THROWS_AS(waveforms::wave_params(0.5, kTwoPi, 1.0, 1.0, -1.0),
                  std::domain_error);
  CHECK_NOTHROW(waveforms::wave_params(0.5, kTwoPi, 1.0, 0.5, -1.0));
}

TEST_CASE("profile symmetries on the grid") {
  const auto p = waveforms::wave_params(0.5, kTwoPi, 1.0, 0.0, 1.0);
  const int n = 256;
  const auto cn = waveforms::sample_profile(ProfileKind::cnoidal, p, n);
  const auto sn = waveforms::sample_profile(ProfileKind::snoidal, p, n);

  for (int j = 0; j < n; ++j) {
    CHECK(std::fabs(cn.phi[(n - j) % n] - cn.phi[j]) < 1e-10);  // even
    CHECK(std::fabs(sn.phi[(n - j) % n] + sn.phi[j]) < 1e-10);  // odd
  }
  CHECK(std::fabs(sn.phi[0]) < 1e-14);
  CHECK(std::fabs(cn.phi[n / 4]) < 1e-10);  // cn(K) = 0 at x = L/4

  // snoidal is the quarter-period translate of cnoidal
  double gap = 0.0;
  for (int j = 0; j < n; ++j) {
    const double shifted = waveforms::eval_profile(ProfileKind::cnoidal, p,
                                                   sn.x[j] + kTwoPi / 4.0);
    gap = std::max(gap, std::fabs(sn.phi[j] - shifted));
  }
  CHECK(gap < 1e-10);
}

TEST_CASE("closed-form waves satisfy the quintic ODE spectrally") {
  for (double k : {0.1, 0.5, 0.9}) {
    const auto p = waveforms::wave_params(k, kTwoPi, 1.0, 0.0, 1.0);
    const auto cn = waveforms::sample_profile(ProfileKind::cnoidal, p, 256);
    const auto sn = waveforms::sample_profile(ProfileKind::snoidal, p, 256);
    const double tol = 1e-8 * std::max(1.0, p.omega);
    CHECK(waveforms::ode_residual(cn, 1.0, 0.0, 1.0) < tol);
    CHECK(waveforms::ode_residual(sn, 1.0, 0.0, 1.0) < tol);
  }

  // theta-scaled wave solves the coupled-coefficient equation
  const auto p = waveforms::wave_params(0.5, kTwoPi, 1.0, 1.0, 1.0);
  const auto scaled = waveforms::sample_profile(ProfileKind::cnoidal, p, 256);
  CHECK(waveforms::ode_residual(scaled, 1.0, 1.0, 1.0) <
        1e-8 * std::max(1.0, p.omega));

  // a non-solution must fail loudly
  auto off = scaled;
  off.phi *= 1.01;
  off.dphi *= 1.01;
  CHECK(waveforms::ode_residual(off, 1.0, 1.0, 1.0) > 1e-3);
}

TEST_CASE("mass closed form matches quadrature and slopes are positive") {
  for (double k : {0.3, 0.5, 0.8}) {
    const auto p = waveforms::wave_params(k, kTwoPi, 1.0, 0.0, 1.0);
    const auto profile = waveforms::sample_profile(ProfileKind::cnoidal, p, 512);
    const auto slopes = waveforms::mass_and_slopes(k, kTwoPi);
    const double quad = grid::inner(profile.phi, profile.phi, kTwoPi);
    CHECK(slopes.mass == doctest::Approx(quad).epsilon(1e-9));

    const double h = 1e-6;
    const double fd = (waveforms::mass_and_slopes(k + h, kTwoPi).mass -
                       waveforms::mass_and_slopes(k - h, kTwoPi).mass) /
                      (2 * h);
    CHECK(slopes.dmass_dk == doctest::Approx(fd).epsilon(1e-5));
    CHECK(slopes.dmass_dk > 0.0);
    CHECK(slopes.domega_dk > 0.0);
    CHECK(slopes.dmass_domega > 0.0);
  }
  CHECK_THROWS_AS(waveforms::mass_and_slopes(0.0, kTwoPi), std::domain_error);
  CHECK_THROWS_AS(waveforms::mass_and_slopes(1.0, kTwoPi), std::domain_error);
}

TEST_CASE("snoidal mass equals cnoidal mass (translation invariance)") {
  for (double k : {0.2, 0.6, 0.85}) {
    const auto p = waveforms::wave_params(k, kTwoPi, 1.0, 1.0, 1.0);
    const auto cn = waveforms::sample_profile(ProfileKind::cnoidal, p, 512);
    const auto sn = waveforms::sample_profile(ProfileKind::snoidal, p, 512);
    const double mc = grid::inner(cn.phi, cn.phi, kTwoPi);
    const double ms = grid::inner(sn.phi, sn.phi, kTwoPi);
    CHECK(mc == doctest::Approx(ms).epsilon(1e-10));
  }
}

TEST_CASE("omega(k) is strictly increasing and inverts by bisection") {
  double prev = 0.0;
  for (int j = 1; j <= 30; ++j) {
    const double k = j / 31.0;
    const double w = waveforms::omega_of_k(k, kTwoPi);
    CHECK(w > prev);
    prev = w;
  }
  for (double k : {0.15, 0.5, 0.92}) {
    const double w = waveforms::omega_of_k(k, kTwoPi);
    CHECK(waveforms::k_of_omega(w, kTwoPi) == doctest::Approx(k).epsilon(1e-10));
  }
  CHECK_THROWS_AS(waveforms::k_of_omega(0.5, kTwoPi), std::domain_error);
}

TEST_CASE("scaled mass picks up theta^2, slopes keep their signs") {
  const auto p = waveforms::wave_params(0.5, kTwoPi, 1.0, 1.0, 1.0);
  const auto plain = waveforms::mass_and_slopes(0.5, kTwoPi);
  const auto scaled = waveforms::scaled_mass_and_slopes(p);
  const double theta2 = p.theta * p.theta;
  CHECK(scaled.mass == doctest::Approx(plain.mass * theta2).epsilon(1e-14));
  CHECK(scaled.dmass_dk ==
        doctest::Approx(plain.dmass_dk * theta2).epsilon(1e-14));
  CHECK(scaled.domega_dk == doctest::Approx(plain.domega_dk).epsilon(1e-14));
  CHECK(scaled.dmass_domega > 0.0);
}

TEST_CASE("half the mass slope is the action second derivative, positive") {
  // d''(omega) = 1/2 d||phi||^2/domega stays positive across the curve
  for (int j = 1; j <= 9; ++j) {
    const auto slopes = waveforms::mass_and_slopes(0.1 * j, kTwoPi);
    CHECK(0.5 * slopes.dmass_domega > 0.0);
  }
}
