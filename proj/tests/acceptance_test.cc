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

// Acceptance harness. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "qtradeoff/inversion.h"
#include "qtradeoff/oracle.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/transform.h"
#include "test_util.h"

using namespace qtradeoff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

struct TransformDataset {
  double s_psi;
  std::vector<double> s_phi;
};

std::vector<TransformDataset> transform_datasets() {
  std::vector<TransformDataset> sets = {{0.6, {}}, {0.9, {}}, {0.99, {}}};
  for (int i = 0; i <= 6; ++i) sets[0].s_phi.push_back(i / 10.0);
  for (int i = 0; i <= 9; ++i) sets[1].s_phi.push_back(i / 10.0);
  for (int i = 0; i <= 9; ++i) sets[2].s_phi.push_back(0.09 + i / 10.0);
  return sets;
}

Outcome fidelity_equivalence() {
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const DensityMatrix a = test_util::random_density(rng);
    const DensityMatrix b = test_util::random_density(rng);
    const double hubner = bloch_fidelity(bloch_from_density(a), bloch_from_density(b));
    worst = std::max(worst, std::abs(hubner - uhlmann_fidelity(a, b)));
  }
  return {worst <= 1e-9, "max |diff| = " + fmt("%.3g", worst) + " over 10000 pairs"};
}

Outcome constructive_matches_closed_form() {
  std::mt19937_64 rng(20260102);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    StatePair psi = test_util::random_pair(rng);
    StatePair phi = test_util::random_pair(rng);
    if (psi.overlap() < phi.overlap()) std::swap(psi, phi);
    const double constructive = max_feasible_probability_constructive(psi, phi);
    worst = std::max(worst,
                     std::abs(constructive - max_probability_pure(psi.overlap(), phi.overlap())));
  }
  return {worst <= 1e-8, "max |diff| = " + fmt("%.3g", worst) + " over 1000 pairs"};
}

Outcome transform_curves() {
  constexpr int kPoints = 200;
  int curves = 0;
  double endpoint_err = 0.0;
  double sweep_err = 0.0;
  bool monotone = true;
  for (const auto& set : transform_datasets()) {
    for (double s_phi : set.s_phi) {
      ++curves;
      const TradeoffCurve curve = frontier_curve(set.s_psi, s_phi, kPoints);
      const Anchors a = anchor_points(set.s_psi, s_phi);
      const TradeoffPoint& first = curve.points.front();
      const TradeoffPoint& last = curve.points.back();
      endpoint_err = std::max({endpoint_err, std::abs(first.p - a.p0), std::abs(first.F - 1.0),
                               std::abs(last.p - 1.0), std::abs(last.F - a.f0)});
      for (std::size_t i = 1; i < curve.points.size(); ++i) {
        monotone = monotone && curve.points[i].p > curve.points[i - 1].p &&
                   curve.points[i].F < curve.points[i - 1].F;
      }
      if (curve.points.size() == 1) continue;  // s_phi == s_psi: the point (1, 1)
      const StatePair phi = canonical_pair(s_phi);
      for (int k = 1; k <= 20; ++k) {
        const double f = a.f0 + (1.0 - a.f0) * k / 21.0;
        const double p = max_probability_pure(set.s_psi, xi_pair(phi, f).overlap());
        sweep_err = std::max(sweep_err, std::abs(tradeoff_fidelity(p, set.s_psi, s_phi) - f));
      }
    }
  }
  const bool pass = endpoint_err <= 1e-12 && monotone && sweep_err <= 1e-9;
  return {pass, std::to_string(curves) + " curves, endpoint err " + fmt("%.3g", endpoint_err) +
                    ", sweep err " + fmt("%.3g", sweep_err) +
                    (monotone ? ", strictly decreasing" : ", NOT strictly decreasing")};
}

Outcome semiclassical_curves() {
  constexpr int kPoints = 200;
  std::vector<double> betas;
  for (int i = 1; i <= 10; ++i) betas.push_back(i / 10.0);

  double endpoint_lo = 0.0;
  double endpoint_hi = 0.0;
  for (double beta : betas) {
    const TradeoffCurve curve = semiclassical_frontier(beta, kPoints);
    endpoint_lo = std::max(endpoint_lo, std::abs(curve.points.front().F - 1.0));
    endpoint_hi = std::max(endpoint_hi, std::abs(curve.points.back().F -
                                                 2.0 * std::sqrt(beta) / (1.0 + beta)));
  }

  // Grid search over x (step 1e-4) brackets the worst input; the sign of the
  // stationarity condition D(x) - N(x)(gamma + beta)/2 locates it inside the
  // bracket.
  double x_err = 0.0;
  int cases = 0;
  for (double beta : betas) {
    for (int k = 1; k <= 10; ++k) {
      const double p_bar = beta * beta + (1.0 - beta * beta) * k / 10.0;
      const double gamma = std::min(1.0, std::sqrt(p_bar));
      if (gamma <= beta) continue;  // f is identically 1
      ++cases;
      int best = 0;
      double best_f = 2.0;
      for (int i = 0; i <= 10000; ++i) {
        const double f = semiclassical_fidelity(gamma, beta, i * 1e-4);
        if (f < best_f) {
          best_f = f;
          best = i;
        }
      }
      const auto slope_sign = [&](double x) {
        const double n = gamma * x + beta * (1.0 - x);
        const double d = gamma * gamma * x + beta * beta * (1.0 - x);
        return d - 0.5 * n * (gamma + beta);
      };
      double lo = std::max(0.0, (best - 1) * 1e-4);
      double hi = std::min(1.0, (best + 1) * 1e-4);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope_sign(mid) < 0.0 ? lo : hi) = mid;
      }
      x_err = std::max(x_err, std::abs(0.5 * (lo + hi) - beta / (gamma + beta)));
    }
  }

  bool ordered = true;
  for (std::size_t b = 0; b + 1 < betas.size(); ++b) {
    const double lo = betas[b + 1] * betas[b + 1];
    for (int k = 0; k < kPoints; ++k) {
      const double p = k == kPoints - 1 ? 1.0 : lo + (1.0 - lo) * k / (kPoints - 1);
      ordered = ordered && semiclassical_frontier_value(betas[b], p) <=
                               semiclassical_frontier_value(betas[b + 1], p);
    }
  }
  const bool pass = endpoint_lo <= 1e-12 && endpoint_hi <= 1e-10 && x_err <= 1e-6 && ordered;
  return {pass, "F(beta^2) err " + fmt("%.3g", endpoint_lo) + ", F(1) err " +
                    fmt("%.3g", endpoint_hi) + ", x* err " + fmt("%.3g", x_err) + " over " +
                    std::to_string(cases) + " (beta, gamma) cases" +
                    (ordered ? ", beta-ordered" : ", NOT beta-ordered")};
}

Outcome oracle_no_violation() {
  const SearchConfig cfg;  // seed 0, 256 restarts, 500 iterations, rank 2
  const std::vector<cli::VerifyRow> rows = cli::run_verification(cli::Suite::kAll, cfg);
  double violation = -1.0;
  double attain_gap = -1.0;
  double seed_gap = -1.0;
  for (const auto& row : rows) {
    const OracleReport& r = row.report;
    violation = std::max(violation, r.violation);
    attain_gap = std::max(attain_gap, r.frontier_value - r.best_point.F);
    seed_gap = std::max(seed_gap, r.frontier_value - r.seed_point.F);
  }
  const bool pass = violation <= 1e-6 && attain_gap <= 1e-6 && seed_gap <= 1e-6;
  return {pass, std::to_string(rows.size()) + " grid points, max violation " +
                    fmt("%.3g", violation) + ", max attainability gap " + fmt("%.3g", attain_gap) +
                    ", constructive seed gap " + fmt("%.3g", seed_gap)};
}

Outcome symmetrization() {
  std::mt19937_64 rng(20260106);
  std::uniform_real_distribution<double> overlap(0.0, 0.98);
  std::uniform_int_distribution<int> rank(1, 4);
  double p_deficit = -1.0;
  double f_deficit = -1.0;
  for (int i = 0; i < 1000; ++i) {
    double s_psi = overlap(rng);
    double s_phi = overlap(rng);
    if (s_psi < s_phi) std::swap(s_psi, s_phi);
    const Matrix2 u = test_util::random_unitary(rng);
    const StatePair psi = test_util::rotate(u, canonical_pair(s_psi));
    const StatePair phi = test_util::rotate(u, canonical_pair(s_phi));
    const QuantumOperation op = test_util::random_channelish(rng, rank(rng));
    const TradeoffPoint before = worst_case_merit(op, psi, phi);
    const TradeoffPoint after = worst_case_merit(symmetrize_operation(op, psi, phi), psi, phi);
    p_deficit = std::max(p_deficit, before.p - after.p);
    f_deficit = std::max(f_deficit, before.F - after.F);
  }
  const bool pass = p_deficit <= 1e-10 && f_deficit <= 1e-10;
  return {pass, "max probability deficit " + fmt("%.3g", p_deficit) +
                    ", max fidelity deficit " + fmt("%.3g", f_deficit) + " over 1000 trials"};
}

// Drops comment lines and the header, then keeps the trailing p,F columns.
std::string p_f_body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string body;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto last = line.rfind(',');
    body += line.substr(line.rfind(',', last - 1) + 1) + '\n';
  }
  return body;
}

Outcome quantum_delegation() {
  const double beta = 0.5;
  const double primed = contracted_pair(beta, inversion_input_pair(0.0)).overlap();
  const double expected = (1.0 - beta * beta) / (1.0 + beta * beta);
  const std::vector<double> s_phi = {0.0};
  const std::string quantum = p_f_body(cli::quantum_inversion_csv(beta, 0.0, 200, "q"));
  const std::string transform = p_f_body(cli::transform_curves_csv(0.6, s_phi, 200, "t"));
  const bool identical = !quantum.empty() && quantum == transform;
  const double err = std::abs(primed - expected);
  return {err <= 1e-12 && identical,
          "primed overlap err " + fmt("%.3g", err) +
              (identical ? ", p,F columns byte-identical" : ", p,F columns DIFFER")};
}

}  // namespace

// With arguments, only the listed criterion numbers run.
int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  const std::vector<Criterion> criteria = {
      {1, "fidelity_equivalence", 5.0, fidelity_equivalence},
      {2, "constructive_equals_closed_form", 30.0, constructive_matches_closed_form},
      {3, "transform_frontier_curves", 10.0, transform_curves},
      {4, "semiclassical_frontier", 10.0, semiclassical_curves},
      {5, "oracle_no_violation", 900.0, oracle_no_violation},
      {6, "symmetrization_inequality", 10.0, symmetrization},
      {7, "quantum_inversion_delegation", 10.0, quantum_delegation},
  };
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf("%s [%d] %s: %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, outcome.detail.c_str(), seconds, c.budget_seconds,
                in_budget ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
