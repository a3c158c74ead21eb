// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qtradeoff/inversion.h"
#include "qtradeoff/qstate.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/transform.h"

namespace qtradeoff::cli {

namespace {

constexpr int kVerifyGridPoints = 11;

// Default transform datasets: an input overlap and its list of target overlaps.
struct TransformDataset {
  double s_psi;
  std::vector<double> s_phi;
};

const std::vector<TransformDataset>& transform_datasets() {
  static const std::vector<TransformDataset> datasets = {
      {0.6, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}},
      {0.9, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}},
      {0.99, {0.09, 0.19, 0.29, 0.39, 0.49, 0.59, 0.69, 0.79, 0.89, 0.99}},
  };
  return datasets;
}

const std::vector<double>& beta_dataset() {
  static const std::vector<double> betas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  return betas;
}

std::string format_human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string comment_header(std::string_view invocation) {
  std::string out = "# ";
  out += invocation;
  out += '\n';
  return out;
}

double parse_number(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    values.push_back(parse_number(item, what));
  }
  if (values.empty()) {
    throw InvalidInput(std::string("empty list for ") + what);
  }
  return values;
}

DensityMatrix parse_bloch_state(const std::string& text) {
  const std::vector<double> r = parse_list(text, "Bloch vector");
  if (r.size() != 3) {
    throw InvalidInput("a Bloch vector needs exactly three components x,y,z");
  }
  return density_from_bloch(BlochVector(r[0], r[1], r[2]));
}

DensityMatrix parse_diag_state(const std::string& text) {
  return DensityMatrix::diagonal(parse_number(text, "diagonal entry"));
}

std::vector<DensityMatrix> collect_states(const std::vector<std::string>& bloch,
                                          const std::vector<std::string>& diag) {
  std::vector<DensityMatrix> states;
  for (const auto& b : bloch) states.push_back(parse_bloch_state(b));
  for (const auto& d : diag) states.push_back(parse_diag_state(d));
  return states;
}

void check_points(int points) {
  if (points < 2) {
    throw InvalidInput("--points must be at least 2");
  }
}

// Writes through a temporary file and renames it into place; "-" is `out`.
void emit(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << body;
    out.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw InvalidInput("cannot open output file '" + path + "'");
    }
    file << body;
    file.flush();
    if (!file) {
      throw InvalidInput("failed writing output file '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidInput("cannot move output into place at '" + path + "'");
  }
}

std::string invocation_of(int argc, const char* const* argv) {
  std::string s = "qtradeoff";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

bool use_color(const std::ostream& out) {
  return &out == &std::cout && std::getenv("NO_COLOR") == nullptr && ::isatty(1);
}

std::string verify_table(const std::vector<VerifyRow>& rows, double tolerance, bool color) {
  std::ostringstream t;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-14s %-26s %-15s %-15s %-15s %-15s %s\n", "suite", "curve",
                "p", "frontier_F", "oracle_F", "violation", "status");
  t << buf;
  double worst = -1.0;
  double worst_attain = 0.0;
  for (const auto& row : rows) {
    const OracleReport& r = row.report;
    const bool ok = r.violation <= tolerance && r.best_point.F >= r.frontier_value - tolerance;
    const char* status = ok ? "ok" : "FAIL";
    std::string colored = status;
    if (color) {
      colored = std::string(ok ? "\x1b[32m" : "\x1b[31m") + status + "\x1b[0m";
    }
    std::snprintf(buf, sizeof(buf), "%-14s %-26s %-15s %-15s %-15s %-15s %s\n",
                  row.suite.c_str(), row.curve.c_str(), format_human(r.p_target).c_str(),
                  format_human(r.frontier_value).c_str(), format_human(r.best_point.F).c_str(),
                  format_human(r.violation).c_str(), colored.c_str());
    t << buf;
    worst = std::max(worst, r.violation);
    worst_attain = std::max(worst_attain, r.frontier_value - r.best_point.F);
  }
  t << "max violation: " << format_human(worst) << " (tolerance " << format_human(tolerance)
    << ")\n";
  t << "max attainability gap: " << format_human(worst_attain) << '\n';
  return t.str();
}

std::string verify_csv(const std::vector<VerifyRow>& rows, std::string_view invocation) {
  std::string s = comment_header(invocation);
  s += "suite,curve,p,frontier_F,oracle_F,oracle_p,seed_F,violation,samples\n";
  for (const auto& row : rows) {
    const OracleReport& r = row.report;
    s += row.suite + ',' + row.curve + ',' + format_csv_number(r.p_target) + ',' +
         format_csv_number(r.frontier_value) + ',' + format_csv_number(r.best_point.F) + ',' +
         format_csv_number(r.best_point.p) + ',' + format_csv_number(r.seed_point.F) + ',' +
         format_csv_number(r.violation) + ',' + std::to_string(r.samples_evaluated) + '\n';
  }
  return s;
}

}  // namespace

std::string format_csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string transform_curves_csv(double s_psi, std::span<const double> s_phi_list, int points,
                                 std::string_view invocation) {
  check_points(points);
  // Validate every curve before emitting anything.
  std::vector<TradeoffCurve> curves;
  for (double s_phi : s_phi_list) {
    curves.push_back(frontier_curve(s_psi, s_phi, points));
  }
  std::string s = comment_header(invocation);
  s += "s_psi,s_phi,p,F\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (const auto& pt : curves[c].points) {
      s += format_csv_number(s_psi) + ',' + format_csv_number(s_phi_list[c]) + ',' +
           format_csv_number(pt.p) + ',' + format_csv_number(pt.F) + '\n';
    }
  }
  return s;
}

std::string semiclassical_curves_csv(std::span<const double> betas, int points,
                                     std::string_view invocation) {
  check_points(points);
  std::vector<TradeoffCurve> curves;
  for (double beta : betas) {
    curves.push_back(semiclassical_frontier(beta, points));
  }
  std::string s = comment_header(invocation);
  s += "beta,p,F\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (const auto& pt : curves[c].points) {
      s += format_csv_number(betas[c]) + ',' + format_csv_number(pt.p) + ',' +
           format_csv_number(pt.F) + '\n';
    }
  }
  return s;
}

std::string quantum_inversion_csv(double beta, double overlap_in, int points,
                                  std::string_view invocation) {
  check_points(points);
  if (!(overlap_in >= 0.0 && overlap_in < 1.0)) {
    throw InvalidInput("--overlap must lie in [0, 1)");
  }
  const StatePair psi = inversion_input_pair(overlap_in);
  const TradeoffCurve curve = quantum_inversion_frontier(beta, psi, points);
  const double s_in = contracted_pair(beta, psi).overlap();
  std::string s = comment_header(invocation);
  s += "beta,s_in,p,F\n";
  for (const auto& pt : curve.points) {
    s += format_csv_number(beta) + ',' + format_csv_number(s_in) + ',' +
         format_csv_number(pt.p) + ',' + format_csv_number(pt.F) + '\n';
  }
  return s;
}

std::vector<VerifyRow> run_verification(Suite suite, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<VerifyRow> rows;
  const auto append = [&rows](const std::string& name, const std::string& curve,
                              const std::vector<OracleReport>& reports) {
    for (const auto& r : reports) {
      rows.push_back({name, curve, r});
    }
  };
  if (suite == Suite::kTransform || suite == Suite::kAll) {
    for (const auto& dataset : transform_datasets()) {
      for (double s_phi : dataset.s_phi) {
        const double p0 = anchor_points(dataset.s_psi, s_phi).p0;
        const std::vector<double> grid = uniform_grid(p0, kVerifyGridPoints);
        append("transform",
               "s_psi=" + format_human(dataset.s_psi) + ";s_phi=" + format_human(s_phi),
               probe_transform_frontier(dataset.s_psi, s_phi, grid, cfg));
      }
    }
  }
  if (suite == Suite::kSemiclassical || suite == Suite::kAll) {
    for (double beta : beta_dataset()) {
      const std::vector<double> grid = uniform_grid(beta * beta, kVerifyGridPoints);
      append("semiclassical", "beta=" + format_human(beta),
             probe_inversion_frontier(beta, SemiclassicalMode{}, grid, cfg));
    }
  }
  if (suite == Suite::kQuantum || suite == Suite::kAll) {
    const StatePair psi = inversion_input_pair(0.0);
    for (double beta : beta_dataset()) {
      const TradeoffCurve curve = quantum_inversion_frontier(beta, psi, 2);
      const std::vector<double> grid = uniform_grid(curve.points.front().p, kVerifyGridPoints);
      append("quantum", "beta=" + format_human(beta),
             probe_inversion_frontier(beta, QuantumMode{psi}, grid, cfg));
    }
  }
  return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "qtradeoff: probability-fidelity tradeoff frontiers for qubit operations.\n"
      "All quantities are dimensionless: overlaps |<a|b>|, probabilities and fidelities "
      "lie in [0, 1]."};
  app.require_subcommand(1);

  std::string output = "-";
  int points = 200;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Output file, or - for standard output")
        ->capture_default_str();
  };
  const auto add_points = [&](CLI::App* sub) {
    sub->add_option("--points", points, "Points per curve (>= 2)")->capture_default_str();
  };

  double s_psi = 0.0;
  std::string s_phi_text;
  auto* transform = app.add_subcommand(
      "curve-transform",
      "Frontier F(p) for psi -> phi with input overlap s_psi and target overlaps s_phi, "
      "0 <= s_phi <= s_psi < 1. Writes s_psi,s_phi,p,F.");
  transform->add_option("--s-psi", s_psi, "Input overlap |<psi+|psi->| in [0, 1)")->required();
  transform->add_option("--s-phi", s_phi_text, "Comma-separated target overlaps in [0, s_psi]")
      ->required();
  add_points(transform);
  add_output(transform);

  std::string beta_text;
  auto* semiclassical = app.add_subcommand(
      "curve-semiclassical",
      "Worst-case fidelity versus threshold probability for inverting diag(1, beta) on "
      "diagonal states, beta in (0, 1]. Writes beta,p,F.");
  semiclassical->add_option("--beta", beta_text, "Comma-separated beta values in (0, 1]")
      ->required();
  add_points(semiclassical);
  add_output(semiclassical);

  double q_beta = 0.0;
  double q_overlap = 0.0;
  auto* quantum = app.add_subcommand(
      "curve-quantum-inversion",
      "Frontier for restoring a symmetric pure pair after diag(1, beta), beta in (0, 1]. "
      "Writes beta,s_in,p,F with s_in the contracted overlap.");
  quantum->add_option("--beta", q_beta, "Contraction parameter in (0, 1]")->required();
  quantum->add_option("--overlap", q_overlap, "Input overlap |<psi+|psi->| in [0, 1)")
      ->required();
  add_points(quantum);
  add_output(quantum);

  std::string suite_name = "all";
  SearchConfig cfg;
  auto* verify = app.add_subcommand(
      "verify",
      "Search for operations beating the analytic frontiers. Exit 0 when the largest "
      "violation is within tolerance, 1 otherwise.");
  verify->add_option("suite", suite_name, "transform | semiclassical | quantum | all")
      ->check(CLI::IsMember({"transform", "semiclassical", "quantum", "all"}))
      ->capture_default_str();
  verify->add_option("--restarts", cfg.restarts, "Random restarts per grid point (>= 1)")
      ->capture_default_str();
  verify->add_option("--iters", cfg.refine_iters, "Local-search iterations per restart (>= 1)")
      ->capture_default_str();
  verify->add_option("--rank", cfg.kraus_rank, "Kraus operators per candidate, 1 to 4")
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "64-bit RNG seed")->capture_default_str();
  verify->add_option("--tolerance", cfg.tolerance, "Allowed violation (> 0)")
      ->capture_default_str();
  verify->add_option("--output", output, "Optional CSV report file");

  std::vector<std::string> bloch_states;
  std::vector<std::string> diag_states;
  auto* fidelity = app.add_subcommand(
      "fidelity",
      "Uhlmann fidelity of two qubit states, each given as --bloch x,y,z (|r| <= 1) or "
      "--diag x with x in [0, 1].");
  fidelity->add_option("--bloch", bloch_states, "Bloch vector x,y,z");
  fidelity->add_option("--diag", diag_states, "Diagonal state diag(x, 1-x)");

  double s_in = 0.0;
  std::optional<double> s_out;
  auto* probability = app.add_subcommand(
      "probability",
      "Maximum success probability of psi -> targets for input overlap --s-in in [0, 1]; "
      "targets given by their overlap --s-out in [0, 1] or as two states via --bloch/--diag.");
  probability->add_option("--s-in", s_in, "Input overlap in [0, 1]")->required();
  probability->add_option("--s-out", s_out, "Overlap of pure targets in [0, 1]");
  probability->add_option("--bloch", bloch_states, "Target Bloch vector x,y,z");
  probability->add_option("--diag", diag_states, "Target diagonal state diag(x, 1-x)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string invocation = invocation_of(argc, argv);
  try {
    if (*transform) {
      const std::vector<double> s_phi = parse_list(s_phi_text, "--s-phi");
      emit(output, transform_curves_csv(s_psi, s_phi, points, invocation), out);
      return kExitOk;
    }
    if (*semiclassical) {
      const std::vector<double> betas = parse_list(beta_text, "--beta");
      emit(output, semiclassical_curves_csv(betas, points, invocation), out);
      return kExitOk;
    }
    if (*quantum) {
      emit(output, quantum_inversion_csv(q_beta, q_overlap, points, invocation), out);
      return kExitOk;
    }
    if (*verify) {
      cfg.validate();
      Suite suite = Suite::kAll;
      if (suite_name == "transform") suite = Suite::kTransform;
      if (suite_name == "semiclassical") suite = Suite::kSemiclassical;
      if (suite_name == "quantum") suite = Suite::kQuantum;
      const std::vector<VerifyRow> rows = run_verification(suite, cfg);
      out << verify_table(rows, cfg.tolerance, use_color(out));
      if (output != "-") {
        emit(output, verify_csv(rows, invocation), out);
      }
      for (const auto& row : rows) {
        const OracleReport& r = row.report;
        if (r.violation > cfg.tolerance) {
          err << "violation: " << row.suite << ' ' << row.curve << " p=" << r.p_target
              << " exceeds the frontier by " << format_human(r.violation) << '\n';
          return kExitViolation;
        }
      }
      return kExitOk;
    }
    if (*fidelity) {
      const std::vector<DensityMatrix> states = collect_states(bloch_states, diag_states);
      if (states.size() != 2) {
        throw InvalidInput("fidelity needs exactly two states (--bloch and/or --diag)");
      }
      out << format_human(uhlmann_fidelity(states[0], states[1])) << '\n';
      return kExitOk;
    }
    if (*probability) {
      const std::vector<DensityMatrix> states = collect_states(bloch_states, diag_states);
      double p;
      if (s_out) {
        if (!states.empty()) {
          throw InvalidInput("give either --s-out or two target states, not both");
        }
        p = max_probability_pure(s_in, *s_out);
      } else {
        if (states.size() != 2) {
          throw InvalidInput("probability needs --s-out or exactly two target states");
        }
        p = max_probability_mixed(s_in, states[0], states[1]);
      }
      out << format_human(p) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qtradeoff::cli
