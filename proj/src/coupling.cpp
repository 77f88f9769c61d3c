#include "hillkrein/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hillkrein::coupling {

namespace {

void require_positive_kappa(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
}

void require_nonnegative_gamma(double gamma) {
  if (!(gamma >= 0.0)) throw std::domain_error("gamma must be nonnegative");
}

// Eigenvalues of a symmetric 2x2 block [[p, r], [r, q]].
std::pair<double, double> sym2_eigs(double p, double q, double r) {
  const double mean = 0.5 * (p + q);
  const double disc = std::hypot(0.5 * (p - q), r);
  return {mean + disc, mean - disc};
}

std::string regime_label(Branch branch, double kappa, double gamma) {
  const double rel = gamma / kappa;
  constexpr double tol = 1e-12;
  switch (branch) {
    case Branch::one:
      if (gamma == 0.0) return "zero";
      if (std::fabs(rel - 2.0) <= tol) return "eq2k";
      return rel < 2.0 ? "sub2k" : "super2k";
    case Branch::minus_one:
      if (gamma == 0.0) return "zero";
      if (std::fabs(rel - 0.4) <= tol) return "eq2k5";
      return rel < 0.4 ? "sub2k5" : "super2k5";
    case Branch::bplus:
    case Branch::bminus:
      return "super2k";
  }
  return "unknown";
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::one: return "one";
    case Branch::minus_one: return "minus-one";
    case Branch::bplus: return "bplus";
    case Branch::bminus: return "bminus";
  }
  return "?";
}

Branch branch_from_string(const std::string& s) {
  if (s == "one" || s == "1") return Branch::one;
  if (s == "minus-one" || s == "minus_one" || s == "-1") return Branch::minus_one;
  if (s == "bplus" || s == "b+") return Branch::bplus;
  if (s == "bminus" || s == "b-") return Branch::bminus;
  throw std::invalid_argument("unknown branch: " + s);
}

std::vector<BranchOption> admissible_b(double kappa, double gamma) {
  require_positive_kappa(kappa);
  require_nonnegative_gamma(gamma);
  std::vector<BranchOption> options;
  options.push_back({Branch::one, true, 1.0, ""});
  if (gamma < kappa) {
    options.push_back({Branch::minus_one, true, -1.0, ""});
  } else {
    options.push_back({Branch::minus_one, false, -1.0,
                       "B = -1 requires gamma < kappa (theta undefined)"});
  }
  const double disc = gamma * gamma - 4.0 * kappa * kappa;
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    options.push_back({Branch::bplus, true, (gamma + root) / (2.0 * kappa), ""});
    options.push_back({Branch::bminus, true, (gamma - root) / (2.0 * kappa), ""});
  } else if (disc == 0.0) {
    options.push_back({Branch::bplus, false, 1.0,
                       "gamma = 2 kappa collapses B+- onto the B = 1 case"});
    options.push_back({Branch::bminus, false, 1.0,
                       "gamma = 2 kappa collapses B+- onto the B = 1 case"});
  } else {
    options.push_back(
        {Branch::bplus, false, 0.0, "bplus requires gamma > 2*kappa"});
    options.push_back(
        {Branch::bminus, false, 0.0, "bminus requires gamma > 2*kappa"});
  }
  return options;
}

Eigen::Matrix4d s_matrix(const CouplingCase& c) {
  const double k = c.kappa, g = c.gamma, b = c.B;
  const double b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 0) = 5.0 * k + 2.0 * g * b3;
  s(0, 1) = s(1, 0) = 3.0 * g * b2;
  s(1, 1) = 5.0 * k * b4 + 2.0 * g * b;
  s(2, 2) = k - 2.0 * g * b3;
  s(2, 3) = s(3, 2) = 3.0 * g * b2;
  s(3, 3) = k * b4 - 2.0 * g * b;
  return s;
}

CouplingCase make_case(double kappa, double gamma, Branch branch) {
  require_positive_kappa(kappa);
  require_nonnegative_gamma(gamma);
  CouplingCase c;
  c.kappa = kappa;
  c.gamma = gamma;
  c.branch = branch;

  switch (branch) {
    case Branch::one: {
      c.B = 1.0;
      c.betas = {5.0 * kappa + 5.0 * gamma, kappa + gamma, 5.0 * kappa - gamma,
                 kappa - 5.0 * gamma};
      break;
    }
    case Branch::minus_one: {
      if (!(gamma < kappa)) {
        throw std::domain_error("minus-one requires gamma < kappa");
      }
      c.B = -1.0;
      c.betas = {5.0 * kappa - 5.0 * gamma, kappa - gamma, 5.0 * kappa + gamma,
                 kappa + 5.0 * gamma};
      break;
    }
    case Branch::bplus:
    case Branch::bminus: {
      if (std::fabs(gamma - 2.0 * kappa) <= 1e-12 * kappa) {
        // both roots collapse onto B = 1; report as that case
        return make_case(kappa, gamma, Branch::one);
      }
      const double disc = gamma * gamma - 4.0 * kappa * kappa;
      if (!(disc > 0.0)) {
        throw std::domain_error(to_string(branch) +
                                " requires gamma > 2*kappa");
      }
      // d carries the branch sign of sqrt(gamma^2 - 4 kappa^2); the same
      // substitution applies inside s(kappa, gamma), which is what makes the
      // closed forms match eig(S) on the bminus branch.
      const double d =
          (branch == Branch::bplus ? 1.0 : -1.0) * std::sqrt(disc);
      c.B = (gamma + d) / (2.0 * kappa);
      const double g = gamma, k2 = kappa * kappa, k3 = k2 * kappa,
                   k4 = k2 * k2;
      const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
      const double s2 = g4 + g3 * d - 4.0 * g2 * k2 - 2.0 * g * d * k2 +
                        2.0 * k4;
      if (!(s2 >= 0.0)) {
        throw std::domain_error("s(kappa,gamma) radicand negative");
      }
      c.s_value = std::sqrt(s2);
      const double root2 = std::sqrt(2.0);
      const double common = 3.0 * root2 * g2 * c.s_value;
      c.betas[0] = 0.25 *
                   (common + 7.0 * g4 + 7.0 * g3 * d - 24.0 * g2 * k2 -
                    10.0 * g * d * k2 + 20.0 * k4) /
                   k3;
      c.betas[1] = 0.25 *
                   (common - g4 - g3 * d - 2.0 * g * d * k2 + 4.0 * k4) / k3;
      c.betas[2] = -0.25 *
                   (common - 7.0 * g4 - 7.0 * g3 * d + 24.0 * g2 * k2 +
                    10.0 * g * d * k2 - 20.0 * k4) /
                   k3;
      c.betas[3] = -0.25 *
                   (common + g4 + g3 * d + 2.0 * g * d * k2 - 4.0 * k4) / k3;
      break;
    }
  }

  // Compatibility condition, exact up to roundoff for every returned B.
  {
    const double b = c.B;
    const double lhs = kappa + gamma * b * b * b;
    const double rhs = kappa * b * b * b * b + gamma * b;
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
    if (std::fabs(lhs - rhs) > 1e-12 * scale) {
      throw std::runtime_error("compatibility condition violated for B");
    }
  }

  // Closed-form betas must reproduce the eigenvalues of S; this guards the
  // long B+- transcriptions.
  {
    const Eigen::Matrix4d s = s_matrix(c);
    const auto [up_hi, up_lo] = sym2_eigs(s(0, 0), s(1, 1), s(0, 1));
    const auto [lo_hi, lo_lo] = sym2_eigs(s(2, 2), s(3, 3), s(2, 3));
    std::array<double, 4> numeric{up_hi, up_lo, lo_hi, lo_lo};
    std::array<double, 4> closed = c.betas;
    std::sort(numeric.begin(), numeric.end());
    std::sort(closed.begin(), closed.end());
    double scale = 1.0;
    for (double b : numeric) scale = std::max(scale, std::fabs(b));
    for (int i = 0; i < 4; ++i) {
      if (std::fabs(numeric[i] - closed[i]) > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "closed-form betas disagree with eig(S): closed " << closed[i]
            << " vs numeric " << numeric[i] << " (branch "
            << to_string(branch) << ", kappa " << kappa << ", gamma " << gamma
            << ")";
        throw std::runtime_error(msg.str());
      }
    }
  }

  c.gamma_regime = regime_label(branch, kappa, gamma);

  std::array<int, 4> order{0, 1, 2, 3};
  // Ties print in the order of the generic chain b4 < b2 < b3 < b1.
  const std::array<int, 4> chain_rank{3, 1, 2, 0};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (c.betas[i] != c.betas[j]) return c.betas[i] < c.betas[j];
    return chain_rank[i] < chain_rank[j];
  });
  c.ordering = order;
  double scale = 1.0;
  for (double b : c.betas) scale = std::max(scale, std::fabs(b));
  std::ostringstream chain;
  for (int i = 0; i < 4; ++i) {
    chain << "b" << order[i] + 1;
    if (i < 3) {
      const bool equal =
          std::fabs(c.betas[order[i]] - c.betas[order[i + 1]]) <= 1e-12 * scale;
      chain << (equal ? " = " : " < ");
    }
  }
  c.chain = chain.str();
  return c;
}

OrthogonalFrame orthonormal_frame(const CouplingCase& c) {
  // (1, B) is an eigenvector of both 2x2 blocks of S: the compatibility
  // condition says exactly that. Its orthogonal partner (B, -1) carries the
  // remaining eigenvalue, so the frame is available in closed form, including
  // the degenerate gamma = 0 and gamma = 2 kappa blocks.
  const double b = c.B;
  const double norm = std::sqrt(1.0 + b * b);
  Eigen::Vector2d e_main(1.0 / norm, b / norm);       // beta_1 / beta_2 column
  Eigen::Vector2d e_other(b / norm, -1.0 / norm);     // beta_3 / beta_4 column

  auto sign_fix = [](Eigen::Vector2d v) {
    for (int i = 0; i < 2; ++i) {
      if (std::fabs(v[i]) > 1e-14) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    return v;
  };
  e_main = sign_fix(e_main);
  e_other = sign_fix(e_other);

  Eigen::Matrix2d block;
  block.col(0) = e_main;
  block.col(1) = e_other;

  OrthogonalFrame frame;
  frame.U = Eigen::Matrix4d::Zero();
  frame.U.block<2, 2>(0, 0) = block;
  frame.U.block<2, 2>(2, 2) = block;
  if (frame.U.determinant() < 0.0) frame.U.col(3) = -frame.U.col(3);
  frame.M = Eigen::Matrix4d::Zero();
  frame.M(0, 0) = c.betas[0];
  frame.M(1, 1) = c.betas[2];
  frame.M(2, 2) = c.betas[1];
  frame.M(3, 3) = c.betas[3];

  const Eigen::Matrix4d recon = frame.U * frame.M * frame.U.transpose();
  const Eigen::Matrix4d s = s_matrix(c);
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((recon - s).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::runtime_error("orthonormal frame does not reconstruct S");
  }
  return frame;
}

std::array<int, 4> channel_operator_order() { return {0, 2, 1, 3}; }

}  // namespace hillkrein::coupling
