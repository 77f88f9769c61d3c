#pragma once

#include "hillkrein/coupling.hpp"
#include "hillkrein/hillspec.hpp"
#include "hillkrein/waveforms.hpp"

#include <Eigen/Dense>

#include <json.hpp>  // vendored nlohmann::json

#include <optional>
#include <string>
#include <vector>

namespace hillkrein {

enum class Verdict { stable, unstable, inconclusive, paper_open };

std::string to_string(Verdict v);

struct SpectrumSummary {
  double beta = 0.0;
  int n = 0;
  int z = 0;
  std::string kernel;  // "phi", "phi_prime", "none", "other"
};

/// Everything one classification run produces: counts, the Krein matrix, the
/// index, the verdict, the paper expectation when the configuration is
/// covered by the case analysis, and the direct J L cross-check.
struct StabilityReport {
  double kappa = 0.0, gamma = 0.0;
  coupling::Branch branch = coupling::Branch::one;
  double B = 1.0;
  std::string gamma_regime;

  double k = 0.0, L = 0.0, omega = 0.0;
  waveforms::ProfileKind profile = waveforms::ProfileKind::cnoidal;
  int N = 0;
  hillspec::Space space = hillspec::Space::full;

  std::vector<SpectrumSummary> spectra;  // operators L_1..L_4
  int n_L = 0, z_L = 0;

  Eigen::MatrixXd V;
  double V_condition = 0.0;  // max |eig| / min |eig|
  int n_V = 0;
  int K_Ham = 0;
  Verdict verdict = Verdict::inconclusive;
  bool paper_covered = false;
  std::optional<std::string> paper_expected;

  bool jl_computed = false;
  double jl_max_real = 0.0;
  std::string jl_verdict;  // "stable" / "unstable"
  bool jl_spectrum_symmetric = true;

  std::string diagnostic;  // nonempty when the pipeline refused a verdict
};

nlohmann::json report_to_json(const StabilityReport& r);
std::string report_to_text(const StabilityReport& r);

std::string csv_header();
std::string report_to_csv_row(const StabilityReport& r,
                              const std::string& status);

}  // namespace hillkrein
