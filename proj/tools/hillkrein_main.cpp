#include "hillkrein/coupling.hpp"
#include "hillkrein/kreinindex.hpp"
#include "hillkrein/report.hpp"
#include "hillkrein/selftest.hpp"
#include "hillkrein/waveforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using hillkrein::StabilityReport;
using hillkrein::Verdict;
using hillkrein::coupling::Branch;
using hillkrein::hillspec::Space;
using hillkrein::waveforms::ProfileKind;

struct CommonOpts {
  double kappa = 1.0;
  double gamma = 0.0;
  std::string branch = "one";
  std::string profile = "cnoidal";
  std::string space = "full";
  std::string k_spec = "0.5";
  double omega = 0.0;  // >0 overrides k
  double length = 6.28318530717958647692;
  int n = 256;
  std::string format = "text";
  std::string out_path;
  int jobs = 0;
};

std::vector<double> parse_k_list(const std::string& spec) {
  std::vector<double> ks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ks.push_back(std::stod(item));
  }
  if (ks.empty()) throw std::invalid_argument("empty k list");
  return ks;
}

int resolve_jobs(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HILL_KREIN_JOBS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

std::ostream& open_output(const CommonOpts& opts, std::ofstream& file) {
  if (opts.out_path.empty()) return std::cout;
  file.open(opts.out_path);
  if (!file) throw std::runtime_error("cannot open " + opts.out_path);
  return file;
}

void run_pool(int jobs, int count, const std::function<void(int)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(jobs, count);
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

StabilityReport classify_one(const CommonOpts& opts, double k) {
  const Branch branch = hillkrein::coupling::branch_from_string(opts.branch);
  const ProfileKind kind =
      hillkrein::waveforms::profile_kind_from_string(opts.profile);
  const Space space = hillkrein::hillspec::space_from_string(opts.space);
  if (space == Space::odd && kind != ProfileKind::snoidal) {
    throw std::invalid_argument(
        "the odd space pairs with the snoidal profile; pass --profile "
        "snoidal (the cnoidal wave is even, its translation mode is not "
        "odd)");
  }
  hillkrein::kreinindex::ReportOptions ropts;
  ropts.n = opts.n;
  return hillkrein::kreinindex::stability_report(opts.kappa, opts.gamma,
                                                 branch, k, opts.length, kind,
                                                 space, ropts);
}

int exit_code_for(const StabilityReport& report) {
  if (report.verdict == Verdict::stable || report.verdict == Verdict::unstable)
    return 0;
  return 2;
}

std::string status_for(const StabilityReport& report) {
  if (!report.paper_covered) return "open";
  const auto expected = hillkrein::kreinindex::paper_expectation(
      report.branch, report.space, report.profile, report.kappa, report.gamma);
  if (!expected) return "open";
  const bool ok = report.diagnostic.empty() && report.n_L == expected->n_L &&
                  report.z_L == expected->z_L && report.n_V == expected->n_V &&
                  report.K_Ham == expected->K_Ham &&
                  hillkrein::to_string(report.verdict) == expected->verdict;
  return ok ? "PASS" : "FAIL";
}

int cmd_classify(const CommonOpts& opts) {
  double k = parse_k_list(opts.k_spec).front();
  if (opts.omega > 0.0) {
    k = hillkrein::waveforms::k_of_omega(opts.omega, opts.length);
  }
  const StabilityReport report = classify_one(opts, k);
  std::ofstream file;
  std::ostream& out = open_output(opts, file);
  if (opts.format == "json") {
    out << hillkrein::report_to_json(report).dump(2) << "\n";
  } else if (opts.format == "csv") {
    out << hillkrein::csv_header() << "\n"
        << hillkrein::report_to_csv_row(report, status_for(report)) << "\n";
  } else {
    out << hillkrein::report_to_text(report);
  }
  return exit_code_for(report);
}

int cmd_sweep(const CommonOpts& opts) {
  if (opts.omega > 0.0) {
    throw std::invalid_argument(
        "sweep iterates --k; --omega applies to classify only");
  }
  std::vector<double> ks = parse_k_list(opts.k_spec);
  std::vector<StabilityReport> reports(ks.size());
  std::vector<std::string> errors(ks.size());
  run_pool(resolve_jobs(opts.jobs), static_cast<int>(ks.size()), [&](int i) {
    try {
      reports[i] = classify_one(opts, ks[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error at k=" << ks[i] << ": " << errors[i] << "\n";
      return 1;
    }
  }
  std::ofstream file;
  std::ostream& out = open_output(opts, file);
  if (opts.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(hillkrein::report_to_json(r));
    out << arr.dump(2) << "\n";
  } else if (opts.format == "csv") {
    out << "k," << hillkrein::csv_header() << "\n";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out << ks[i] << ","
          << hillkrein::report_to_csv_row(reports[i], status_for(reports[i]))
          << "\n";
    }
  } else {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out << "--- k = " << ks[i] << " ---\n"
          << hillkrein::report_to_text(reports[i]);
    }
  }
  return 0;
}

int cmd_table(const CommonOpts& opts, bool include_open) {
  struct Row {
    hillkrein::kreinindex::CoverageCell cell;
    double gamma;
    double k;
    bool open_row = false;
  };
  std::vector<Row> rows;
  const std::vector<double> ks = parse_k_list(opts.k_spec);
  for (const auto& cell : hillkrein::kreinindex::covered_cells()) {
    for (double k : ks) {
      rows.push_back({cell, cell.gamma_at_unit_kappa * opts.kappa, k, false});
    }
  }
  if (include_open) {
    for (double k : ks) {
      rows.push_back({{Branch::minus_one, Space::full, ProfileKind::cnoidal,
                       "0 < gamma < kappa (open)", 0.5},
                      0.5 * opts.kappa,
                      k,
                      true});
      rows.push_back({{Branch::minus_one, Space::odd, ProfileKind::snoidal,
                       "0 < gamma < kappa (open)", 0.5},
                      0.5 * opts.kappa,
                      k,
                      true});
    }
  }

  std::vector<StabilityReport> reports(rows.size());
  std::vector<std::string> errors(rows.size());
  run_pool(resolve_jobs(opts.jobs), static_cast<int>(rows.size()), [&](int i) {
    try {
      hillkrein::kreinindex::ReportOptions ropts;
      ropts.n = opts.n;
      reports[i] = hillkrein::kreinindex::stability_report(
          opts.kappa, rows[i].gamma, rows[i].cell.branch, rows[i].k,
          opts.length, rows[i].cell.profile, rows[i].cell.space, ropts);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  int failures = 0;
  std::ofstream file;
  std::ostream& out = open_output(opts, file);
  nlohmann::json json_rows = nlohmann::json::array();
  if (opts.format == "csv") out << hillkrein::csv_header() << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error in cell " << rows[i].cell.gamma_label << ": "
                << errors[i] << "\n";
      ++failures;
      continue;
    }
    const std::string status = status_for(reports[i]);
    if (status == "FAIL") ++failures;
    if (opts.format == "json") {
      nlohmann::json row = hillkrein::report_to_json(reports[i]);
      row["status"] = status;
      json_rows.push_back(row);
    } else if (opts.format == "csv") {
      out << hillkrein::report_to_csv_row(reports[i], status) << "\n";
    } else {
      std::ostringstream line;
      line << status << "  " << hillkrein::coupling::to_string(rows[i].cell.branch)
           << "  [" << rows[i].cell.gamma_label << "]  "
           << hillkrein::waveforms::to_string(rows[i].cell.profile) << "/"
           << hillkrein::hillspec::to_string(rows[i].cell.space)
           << "  k=" << rows[i].k << "  n_L=" << reports[i].n_L
           << " z_L=" << reports[i].z_L << " n_V=" << reports[i].n_V
           << " K_Ham=" << reports[i].K_Ham << "  verdict="
           << hillkrein::to_string(reports[i].verdict) << "  paper="
           << (reports[i].paper_expected ? *reports[i].paper_expected
                                         : std::string("paper_open"))
           << "  jl_max_re=" << reports[i].jl_max_real;
      out << line.str() << "\n";
    }
  }
  if (opts.format == "json") out << json_rows.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hillkrein: spectral stability of quintic-NLS-system periodic standing "
      "waves via Hill-operator counts, the Krein matrix, and the "
      "Hamiltonian-Krein index, cross-checked against the J L spectrum"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* cmd, bool with_case_flags) {
    if (with_case_flags) {
      cmd->add_option("--kappa", opts.kappa, "self-interaction constant > 0");
      cmd->add_option("--gamma", opts.gamma, "coupling constant >= 0");
      cmd->add_option("--branch", opts.branch,
                      "B branch: one, minus-one, bplus, bminus");
      cmd->add_option("--profile", opts.profile, "cnoidal or snoidal");
      cmd->add_option("--space", opts.space, "full or odd");
      cmd->add_option("--omega", opts.omega,
                      "wave frequency (alternative to --k)");
    }
    cmd->add_option("--k", opts.k_spec, "elliptic modulus, comma list allowed");
    cmd->add_option("--L", opts.length, "period (default 2 pi)");
    cmd->add_option("--N", opts.n, "grid size (even, default 256)");
    cmd->add_option("--format", opts.format, "text, json, or csv");
    cmd->add_option("--out", opts.out_path, "output path (default stdout)");
    cmd->add_option("--jobs", opts.jobs,
                    "worker threads (env HILL_KREIN_JOBS)");
  };

  auto* classify = app.add_subcommand("classify", "classify a single case");
  add_common(classify, true);

  auto* sweep = app.add_subcommand("sweep", "classify across a k grid");
  add_common(sweep, true);

  auto* table =
      app.add_subcommand("table", "reproduce the paper-covered verdict table");
  bool include_open = false;
  add_common(table, false);
  table->add_option("--kappa", opts.kappa, "self-interaction constant > 0");
  table->add_flag("--include-open", include_open,
                  "add the open B = -1, gamma in (0, kappa) rows");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  bool quick = false;
  double tau_override = 0.0;
  selftest->add_flag("--quick", quick, "elliptic + waveform criteria only");
  selftest->add_option("--override-tau-z", tau_override,
                       "replace the Hill zero tolerance (diagnostics)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (table->parsed()) return cmd_table(opts, include_open);
    if (selftest->parsed()) {
      hillkrein::selftest::Options sopts;
      sopts.quick = quick;
      sopts.tol_zero_override = tau_override;
      return hillkrein::selftest::run(sopts, std::cout) == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
