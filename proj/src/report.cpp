#include "hillkrein/report.hpp"

#include <iomanip>
#include <sstream>

namespace hillkrein {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::paper_open: return "paper_open";
  }
  return "?";
}

json report_to_json(const StabilityReport& r) {
  json spectra = json::array();
  for (const auto& s : r.spectra) {
    spectra.push_back(
        {{"beta", s.beta}, {"n", s.n}, {"z", s.z}, {"kernel", s.kernel}});
  }
  json v_matrix = json::array();
  for (int i = 0; i < r.V.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < r.V.cols(); ++j) row.push_back(r.V(i, j));
    v_matrix.push_back(row);
  }
  json out = {
      {"schema", "hill-krein/1"},
      {"case",
       {{"kappa", r.kappa},
        {"gamma", r.gamma},
        {"branch", coupling::to_string(r.branch)},
        {"B", r.B}}},
      {"wave",
       {{"k", r.k},
        {"L", r.L},
        {"omega", r.omega},
        {"profile", waveforms::to_string(r.profile)},
        {"N", r.N}}},
      {"space", hillspec::to_string(r.space)},
      {"spectra", spectra},
      {"V", {{"matrix", v_matrix}, {"n_neg", r.n_V}}},
      {"K_Ham", r.K_Ham},
      {"verdict", to_string(r.verdict)},
      {"paper_expected",
       r.paper_expected ? json(*r.paper_expected) : json(nullptr)},
      {"jl",
       {{"max_real", r.jl_max_real},
        {"verdict", r.jl_computed ? json(r.jl_verdict) : json(nullptr)}}},
      {"diagnostic", r.diagnostic.empty() ? json(nullptr) : json(r.diagnostic)},
  };
  return out;
}

std::string report_to_text(const StabilityReport& r) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "case: kappa=" << r.kappa << " gamma=" << r.gamma << " branch="
      << coupling::to_string(r.branch) << " B=" << r.B << " regime="
      << r.gamma_regime << "\n";
  out << "wave: " << waveforms::to_string(r.profile) << " k=" << r.k
      << " L=" << r.L << " omega=" << r.omega << " N=" << r.N << " space="
      << hillspec::to_string(r.space) << "\n";
  out << "hill spectra (beta, n, z, kernel):\n";
  for (std::size_t i = 0; i < r.spectra.size(); ++i) {
    const auto& s = r.spectra[i];
    out << "  L" << i + 1 << ": beta=" << s.beta << " n=" << s.n
        << " z=" << s.z << " kernel=" << s.kernel << "\n";
  }
  out << "n(L)=" << r.n_L << " z(L)=" << r.z_L << "\n";
  if (r.V.size() > 0) {
    out << "V (" << r.V.rows() << "x" << r.V.cols() << "):\n";
    for (int i = 0; i < r.V.rows(); ++i) {
      out << "  ";
      for (int j = 0; j < r.V.cols(); ++j) out << std::setw(16) << r.V(i, j);
      out << "\n";
    }
    out << "n(V)=" << r.n_V << "  cond(V)=" << r.V_condition
        << "  K_Ham=" << r.K_Ham << "\n";
  }
  out << "verdict: " << to_string(r.verdict);
  if (r.paper_expected) out << " (paper: " << *r.paper_expected << ")";
  if (!r.paper_covered) out << " [not covered by the case analysis]";
  out << "\n";
  if (r.jl_computed) {
    out << "JL spectrum: max Re lambda = " << r.jl_max_real << " -> "
        << r.jl_verdict << "\n";
  }
  if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
  return out.str();
}

std::string csv_header() {
  return "branch,gamma_regime,profile,space,n_L,z_L,n_V,K_Ham,verdict,"
         "paper_verdict,jl_max_real,status";
}

std::string report_to_csv_row(const StabilityReport& r,
                              const std::string& status) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << coupling::to_string(r.branch) << "," << r.gamma_regime << ","
      << waveforms::to_string(r.profile) << "," << hillspec::to_string(r.space)
      << "," << r.n_L << "," << r.z_L << "," << r.n_V << "," << r.K_Ham << ","
      << to_string(r.verdict) << ","
      << (r.paper_expected ? *r.paper_expected : "paper_open") << ","
      << r.jl_max_real << "," << status;
  return out.str();
}

}  // namespace hillkrein
