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

#include "qtradeoff/oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "qtradeoff/inversion.h"

namespace qtradeoff {

namespace {

using Params = std::vector<double>;
// Evaluates a candidate, possibly projecting it in place first.
using Evaluate = std::function<double(Params&)>;

constexpr double kSimplexStep = 0.1;

Params nelder_mead_maximize(Params start, const Evaluate& f, int iters, double step,
                            std::uint64_t& evaluations) {
  const std::size_t n = start.size();
  std::vector<Params> vertex(n + 1, start);
  std::vector<double> value(n + 1);
  const auto eval = [&](Params& x) {
    ++evaluations;
    return f(x);
  };
  value[0] = eval(vertex[0]);
  for (std::size_t i = 1; i <= n; ++i) {
    vertex[i][i - 1] += step;
    value[i] = eval(vertex[i]);
  }

  std::vector<std::size_t> order(n + 1);
  const auto affine = [n](const Params& from, const Params& to, double t) {
    Params out(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = from[k] + t * (to[k] - from[k]);
    }
    return out;
  };

  for (int it = 0; it < iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        diameter = std::max(diameter, std::abs(vertex[i][k] - vertex[best][k]));
      }
    }
    if (diameter < 1e-12 && value[best] - value[worst] < 1e-15) {
      break;
    }

    Params centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) {
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        centroid[k] += vertex[i][k] / static_cast<double>(n);
      }
    }

    Params reflected = affine(centroid, vertex[worst], -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected > value[best]) {
      Params expanded = affine(centroid, vertex[worst], -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded > f_reflected) {
        vertex[worst] = std::move(expanded);
        value[worst] = f_expanded;
      } else {
        vertex[worst] = std::move(reflected);
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected > value[second_worst]) {
      vertex[worst] = std::move(reflected);
      value[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected > value[worst];
    Params contracted =
        outside ? affine(centroid, reflected, 0.5) : affine(centroid, vertex[worst], 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted > (outside ? f_reflected : value[worst]) ||
        (outside && f_contracted == f_reflected)) {
      vertex[worst] = std::move(contracted);
      value[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) {
        continue;
      }
      vertex[i] = affine(vertex[best], vertex[i], 0.5);
      value[i] = eval(vertex[i]);
    }
  }
  const auto it = std::max_element(value.begin(), value.end());
  return vertex[static_cast<std::size_t>(it - value.begin())];
}

std::vector<Matrix2> params_to_kraus(const Params& x) {
  std::vector<Matrix2> kraus(x.size() / 8);
  for (std::size_t j = 0; j < kraus.size(); ++j) {
    const double* q = x.data() + 8 * j;
    kraus[j] << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(q[4], q[5]),
        Complex(q[6], q[7]);
  }
  return kraus;
}

Params kraus_to_params(std::span<const Matrix2> kraus) {
  Params x;
  x.reserve(8 * kraus.size());
  for (const auto& k : kraus) {
    for (int i = 0; i < 2; ++i) {
      for (int c = 0; c < 2; ++c) {
        x.push_back(k(i, c).real());
        x.push_back(k(i, c).imag());
      }
    }
  }
  return x;
}

double project_params(Params& x) {
  const std::vector<Matrix2> kraus = params_to_kraus(x);
  const double lambda = max_effect_eigenvalue(kraus);
  if (lambda > 1.0) {
    const double scale = 1.0 / std::sqrt(lambda);
    for (double& v : x) {
      v *= scale;
    }
  }
  return lambda;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

void check_grid(std::span<const double> p_grid) {
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw InvalidInput("probability grid points must lie in (0, 1]");
    }
  }
}

// Best feasible candidate seen so far within one restart.
struct Candidate {
  bool found = false;
  double F = -1.0;
  double p = 0.0;
  Params x;

  void offer(double f, double p_min, const Params& params) {
    if (!found || f > F || (f == F && p_min > p)) {
      found = true;
      F = f;
      p = p_min;
      x = params;
    }
  }
};

// Merges restart winners with the deterministic key (F, p, -restart).
bool better(const Candidate& a, std::size_t ia, const Candidate& b, std::size_t ib) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  if (a.F != b.F) return a.F > b.F;
  if (a.p != b.p) return a.p > b.p;
  return ia < ib;
}

// psi -> phi with general Kraus operators.
struct PairProblem {
  StatePair inputs;
  StatePair targets;
  std::function<double(double)> frontier;
  std::function<std::vector<Matrix2>(double p)> seed;
};

// Worst-case (p, F) of a Kraus list on pure inputs, by vector arithmetic.
TradeoffPoint pair_merit(std::span<const Matrix2> kraus, const StatePair& in,
                         const StatePair& tgt) {
  const auto member = [&](const Ket& psi, const Ket& phi) {
    double p = 0.0;
    double hit = 0.0;
    for (const auto& k : kraus) {
      const Ket out = k * psi;
      p += out.squaredNorm();
      hit += std::norm(phi.dot(out));
    }
    const double f = p >= kProbFloor ? std::sqrt(std::clamp(hit / p, 0.0, 1.0)) : 0.0;
    return TradeoffPoint{p, f};
  };
  const TradeoffPoint a = member(in.plus.amplitudes(), tgt.plus.amplitudes());
  const TradeoffPoint b = member(in.minus.amplitudes(), tgt.minus.amplitudes());
  return {std::min(a.p, b.p), std::min(a.F, b.F)};
}

std::vector<Matrix2> pad_kraus(std::vector<Matrix2> kraus, int rank) {
  while (static_cast<int>(kraus.size()) < rank) {
    kraus.push_back(Matrix2::Zero());
  }
  return kraus;
}

std::vector<OracleReport> probe_pairs(const PairProblem& problem, std::span<const double> p_grid,
                                      const SearchConfig& cfg) {
  cfg.validate();
  check_grid(p_grid);
  std::vector<OracleReport> reports(p_grid.size());
  parallel_for(p_grid.size(), [&](std::size_t g) {
    const double p_target = p_grid[g];
    OracleReport& report = reports[g];
    report.p_target = p_target;
    report.frontier_value = problem.frontier(p_target);

    Candidate winner;
    std::size_t winner_index = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
      std::vector<Matrix2> start;
      if (r == 0) {
        start = pad_kraus(problem.seed(p_target), cfg.kraus_rank);
      } else {
        Rng rng = split_rng(cfg.seed, g, static_cast<std::uint64_t>(r));
        start = random_operation(cfg.kraus_rank, rng).kraus();
      }
      Candidate best;
      const Evaluate objective = [&](Params& x) {
        project_params(x);
        const std::vector<Matrix2> kraus = params_to_kraus(x);
        const TradeoffPoint m = pair_merit(kraus, problem.inputs, problem.targets);
        if (m.p >= p_target - kProbSlack) {
          best.offer(m.F, m.p, x);
        }
        return m.F - kPenaltyWeight * std::max(0.0, p_target - m.p);
      };
      Params x0 = kraus_to_params(start);
      if (r == 0) {
        Params seed_params = x0;
        project_params(seed_params);
        report.seed_point = pair_merit(params_to_kraus(seed_params), problem.inputs,
                                       problem.targets);
      }
      nelder_mead_maximize(std::move(x0), objective, cfg.refine_iters, kSimplexStep,
                           report.samples_evaluated);
      if (better(best, static_cast<std::size_t>(r), winner, winner_index)) {
        winner = std::move(best);
        winner_index = static_cast<std::size_t>(r);
      }
    }

    if (!winner.found) {
      report.best_point = {0.0, 0.0};
    } else {
      // Re-check through the density-matrix path; the operation constructor
      // enforces sum K^dag K <= I within kTraceTol.
      const QuantumOperation op(params_to_kraus(winner.x));
      report.best_point = worst_case_merit(op, problem.inputs, problem.targets);
      if (report.best_point.p < p_target - kProbSlack) {
        throw std::logic_error("oracle winner failed the feasibility re-check");
      }
    }
    report.violation = report.best_point.F - report.frontier_value;
  });
  return reports;
}

// Constructive seed: exact transformation onto the xi pair at fidelity f.
std::vector<Matrix2> constructive_seed(const StatePair& inputs, const StatePair& targets,
                                       double p, double f) {
  const StatePair xi = xi_pair(targets, f);
  Matrix2 a = balanced_kraus_operator(inputs, xi, p);
  const double norm = spectral_norm(a);
  if (norm > 1.0) {
    a /= norm;
  }
  return {a};
}

// Worst case over x of the diagonal inverter diag(a, b) after diag(1, beta).
struct SemiclassicalMerit {
  double p = 0.0;
  double F = 0.0;
  double x_worst = 0.0;
};

SemiclassicalMerit semiclassical_merit(double a, double b, double beta) {
  constexpr int kGrid = 101;
  const double a2 = a * a;
  const double b2 = b * b;
  const double bb = beta * beta;
  const auto prob = [&](double x) {
    return (a2 * x + b2 * bb * (1.0 - x)) / (x + bb * (1.0 - x));
  };
  const auto fid = [&](double x) {
    const double restored = a2 * x + b2 * bb * (1.0 - x);
    if (prob(x) < kProbFloor) {
      return 0.0;
    }
    return (std::abs(a) * x + std::abs(b) * beta * (1.0 - x)) / std::sqrt(restored);
  };
  SemiclassicalMerit m;
  m.p = 2.0;
  m.F = 2.0;
  int argmin = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = static_cast<double>(i) / (kGrid - 1);
    m.p = std::min(m.p, prob(x));
    const double f = fid(x);
    if (f < m.F) {
      m.F = f;
      argmin = i;
    }
  }
  m.x_worst = static_cast<double>(argmin) / (kGrid - 1);
  if (m.F > 0.0) {
    const double lo = std::max(0.0, (argmin - 1.0) / (kGrid - 1));
    const double hi = std::min(1.0, (argmin + 1.0) / (kGrid - 1));
    const double x = golden_section_minimize(fid, lo, hi, 60);
    const double f = fid(x);
    if (f < m.F) {
      m.F = f;
      m.x_worst = x;
    }
  }
  return m;
}

// The same figures of merit through density matrices and Uhlmann fidelity.
TradeoffPoint semiclassical_recheck(const QuantumOperation& inverter, double beta,
                                    double x_worst) {
  const QuantumOperation contraction = contraction_matrix(beta);
  const auto at = [&](double x) {
    const DensityMatrix rho = DensityMatrix::diagonal(x);
    const OperationOutcome first = apply_operation(contraction, rho);
    const OperationOutcome second = apply_operation(inverter, *first.state);
    const double f = second.occurred() ? uhlmann_fidelity(rho, *second.state) : 0.0;
    return TradeoffPoint{second.probability, f};
  };
  TradeoffPoint worst{2.0, 2.0};
  for (int i = 0; i <= 100; ++i) {
    const TradeoffPoint m = at(i / 100.0);
    worst.p = std::min(worst.p, m.p);
    worst.F = std::min(worst.F, m.F);
  }
  const TradeoffPoint m = at(x_worst);
  worst.p = std::min(worst.p, m.p);
  worst.F = std::min(worst.F, m.F);
  return worst;
}

std::vector<OracleReport> probe_semiclassical(double beta, std::span<const double> p_grid,
                                              const SearchConfig& cfg) {
  std::vector<OracleReport> reports(p_grid.size());
  parallel_for(p_grid.size(), [&](std::size_t g) {
    const double p_target = p_grid[g];
    OracleReport& report = reports[g];
    report.p_target = p_target;
    report.frontier_value = semiclassical_frontier_value(beta, p_target);

    Candidate winner;
    std::size_t winner_index = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
      Params x0(2);
      if (r == 0) {
        x0 = {std::max(std::sqrt(p_target), beta), 1.0};
      } else {
        Rng rng = split_rng(cfg.seed, g, static_cast<std::uint64_t>(r));
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> uniform;
        x0 = {normal(rng), normal(rng)};
        const double scale = (1.0 - uniform(rng)) / std::max(std::abs(x0[0]), std::abs(x0[1]));
        x0[0] *= scale;
        x0[1] *= scale;
      }
      Candidate best;
      const Evaluate objective = [&](Params& x) {
        const double largest = std::max(std::abs(x[0]), std::abs(x[1]));
        if (largest > 1.0) {
          x[0] /= largest;
          x[1] /= largest;
        }
        const SemiclassicalMerit m = semiclassical_merit(x[0], x[1], beta);
        if (m.p >= p_target - kProbSlack) {
          best.offer(m.F, m.p, Params{x[0], x[1], m.x_worst});
        }
        return m.F - kPenaltyWeight * std::max(0.0, p_target - m.p);
      };
      if (r == 0) {
        const SemiclassicalMerit m = semiclassical_merit(x0[0], x0[1], beta);
        report.seed_point = {m.p, m.F};
      }
      nelder_mead_maximize(std::move(x0), objective, cfg.refine_iters, kSimplexStep,
                           report.samples_evaluated);
      if (better(best, static_cast<std::size_t>(r), winner, winner_index)) {
        winner = std::move(best);
        winner_index = static_cast<std::size_t>(r);
      }
    }

    if (!winner.found) {
      report.best_point = {0.0, 0.0};
    } else {
      Matrix2 k = Matrix2::Zero();
      k(0, 0) = winner.x[0];
      k(1, 1) = winner.x[1];
      const QuantumOperation op = QuantumOperation::single(k);
      report.best_point = semiclassical_recheck(op, beta, winner.x[2]);
      if (report.best_point.p < p_target - kProbSlack) {
        throw std::logic_error("oracle winner failed the feasibility re-check");
      }
    }
    report.violation = report.best_point.F - report.frontier_value;
  });
  return reports;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw InvalidInput("restarts must be positive");
  if (refine_iters < 1) throw InvalidInput("refine iterations must be positive");
  if (kraus_rank < 1 || kraus_rank > static_cast<int>(kMaxKrausRank)) {
    throw InvalidInput("Kraus rank must lie in [1, 4]");
  }
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
}

Rng split_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(substream),
                    static_cast<std::uint32_t>(substream >> 32)};
  return Rng(seq);
}

std::vector<Matrix2> random_kraus(int rank, Rng& rng, double effect_norm) {
  if (rank < 1 || rank > static_cast<int>(kMaxKrausRank)) {
    throw InvalidInput("Kraus rank must lie in [1, 4]");
  }
  if (!(effect_norm > 0.0 && effect_norm <= 1.0)) {
    throw InvalidInput("effect norm must lie in (0, 1]");
  }
  std::normal_distribution<double> normal;
  std::vector<Matrix2> kraus(static_cast<std::size_t>(rank));
  for (auto& k : kraus) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        k(i, j) = Complex(re, im);
      }
    }
  }
  const double scale = std::sqrt(effect_norm / max_effect_eigenvalue(kraus));
  for (auto& k : kraus) {
    k *= scale;
  }
  return kraus;
}

QuantumOperation random_operation(int rank, Rng& rng) {
  std::uniform_real_distribution<double> uniform;
  const double target = 1.0 - uniform(rng);
  return QuantumOperation(random_kraus(rank, rng, target));
}

void project_kraus(std::vector<Matrix2>& kraus) {
  const double lambda = max_effect_eigenvalue(kraus);
  if (lambda > 1.0) {
    const double scale = 1.0 / std::sqrt(lambda);
    for (auto& k : kraus) {
      k *= scale;
    }
  }
}

QuantumOperation refine_operation(const QuantumOperation& start, const KrausObjective& objective,
                                  int iters) {
  if (iters < 1) {
    throw InvalidInput("refine iterations must be positive");
  }
  std::uint64_t evaluations = 0;
  const Evaluate eval = [&](Params& x) {
    project_params(x);
    return objective(params_to_kraus(x));
  };
  const Params best = nelder_mead_maximize(kraus_to_params(start.kraus()), eval, iters,
                                           kSimplexStep, evaluations);
  return QuantumOperation(params_to_kraus(best));
}

std::vector<double> uniform_grid(double lo, int n) {
  if (!(lo >= 0.0 && lo <= 1.0)) {
    throw InvalidInput("grid start must lie in [0, 1]");
  }
  if (n < 2) {
    throw InvalidInput("a grid needs at least two points");
  }
  if (lo == 1.0) {
    return {1.0};
  }
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = i == n - 1 ? 1.0 : lo + (1.0 - lo) * i / (n - 1);
  }
  return grid;
}

std::vector<OracleReport> probe_transform_frontier(double s_psi, double s_phi,
                                                   std::span<const double> p_grid,
                                                   const SearchConfig& cfg) {
  anchor_points(s_psi, s_phi);  // validates the overlaps
  PairProblem problem{canonical_pair(s_psi), canonical_pair(s_phi), {}, {}};
  problem.frontier = [=](double p) { return tradeoff_fidelity(p, s_psi, s_phi); };
  problem.seed = [&problem](double p) {
    const double f = problem.frontier(p);
    return constructive_seed(problem.inputs, problem.targets, p, f);
  };
  return probe_pairs(problem, p_grid, cfg);
}

std::vector<OracleReport> probe_inversion_frontier(double beta, const InversionMode& mode,
                                                   std::span<const double> p_grid,
                                                   const SearchConfig& cfg) {
  Contraction{beta};
  if (beta == 0.0) {
    throw DegenerateContraction("beta = 0 cannot be inverted with nonzero worst-case fidelity");
  }
  cfg.validate();
  check_grid(p_grid);
  if (std::holds_alternative<SemiclassicalMode>(mode)) {
    return probe_semiclassical(beta, p_grid, cfg);
  }
  const StatePair& psi = std::get<QuantumMode>(mode).psi;
  PairProblem problem{contracted_pair(beta, psi), psi, {}, {}};
  const double s_in = problem.inputs.overlap();
  const double s_out = psi.overlap();
  problem.frontier = [=](double p) {
    return s_out >= s_in ? 1.0 : tradeoff_fidelity(p, s_in, s_out);
  };
  problem.seed = [&problem](double p) {
    const double f = problem.frontier(p);
    return constructive_seed(problem.inputs, problem.targets, p, f);
  };
  return probe_pairs(problem, p_grid, cfg);
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               int iters) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qtradeoff
