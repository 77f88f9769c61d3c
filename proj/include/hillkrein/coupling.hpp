#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace hillkrein::coupling {

enum class Branch { one, minus_one, bplus, bminus };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

/// One admissible coupling configuration: the root B of
/// kappa + gamma B^3 = kappa B^4 + gamma B, the eigenvalues beta_1..beta_4 of
/// the interaction matrix S in closed form, and the ordering data the
/// comparison arguments run on.
struct CouplingCase {
  double kappa = 0.0;
  double gamma = 0.0;
  Branch branch = Branch::one;
  double B = 1.0;
  std::array<double, 4> betas{};  // beta_1..beta_4
  double s_value = 0.0;           // s(kappa, gamma); nonzero only for B+-
  std::string gamma_regime;
  std::array<int, 4> ordering{};  // beta indices (0-based) sorted ascending
  std::string chain;              // e.g. "b4 < b2 < b3 < b1"
};

struct BranchOption {
  Branch branch;
  bool admissible;
  double B;          // meaningful when admissible
  std::string reason;  // exclusion reason when not admissible
};

/// The four roots of the compatibility condition with admissibility flags:
/// B = 1 always; B = -1 needs gamma < kappa (theta real); B+- need
/// gamma > 2 kappa (gamma = 2 kappa collapses both onto B = 1).
std::vector<BranchOption> admissible_b(double kappa, double gamma);

/// Builds the case, computes closed-form betas, and cross-checks them against
/// the numeric eigenvalues of S (throws on disagreement > 1e-9 relative).
CouplingCase make_case(double kappa, double gamma, Branch branch);

Eigen::Matrix4d s_matrix(const CouplingCase& c);

struct OrthogonalFrame {
  Eigen::Matrix4d U;  // orthogonal, det +1
  Eigen::Matrix4d M;  // diag(beta_1, beta_3, beta_2, beta_4)
};

/// Unit eigenvectors of S arranged so that U M U^T = S with M's diagonal
/// ordered (beta_1, beta_3, beta_2, beta_4); first nonzero entry of each
/// column positive, one sign flipped if needed for det U = +1.
OrthogonalFrame orthonormal_frame(const CouplingCase& c);

/// Channel index -> Hill operator index (0-based beta subscript) under the
/// U-rotation, i.e. {0,2,1,3} for the diagonal order above.
std::array<int, 4> channel_operator_order();

}  // namespace hillkrein::coupling
