// Copyright 2026 The zsg Authors
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

// Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
// criterion and exits nonzero if any fails. Criterion numbers may be given
// on the command line to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "test_util.h"
#include "zsg/game.h"
#include "zsg/gibbs.h"
#include "zsg/lp.h"
#include "zsg/rng.h"
#include "zsg/solver.h"

namespace zsg {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolverConfig FixedConfig(double eps, double delta, uint64_t seed,
                         Backend backend = Backend::kExactDense) {
  SolverConfig config;
  config.schedule = Schedule::FixedAccuracy(eps);
  config.delta = delta;
  config.seed = seed;
  config.backend = backend;
  return config;
}

// 1. Known-value games.
Outcome KnownValueGames() {
  const auto start = Clock::now();
  const PayoffMatrix pennies = PayoffMatrix::FromRows({{1, -1}, {-1, 1}});
  const PayoffMatrix rps =
      PayoffMatrix::FromRows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  int good_mp = 0;
  int good_rps = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const SolveResult mp = Solve(pennies, FixedConfig(0.05, 0.1, seed));
    good_mp += mp.duality_gap <= 0.05 && std::abs(mp.value_estimate) <= 0.05;
    const SolveResult r = Solve(rps, FixedConfig(0.05, 0.1, seed));
    good_rps += r.duality_gap <= 0.05 && std::abs(r.value_estimate) <= 0.05;
  }
  const double seconds = Seconds(start);
  return {good_mp >= 18 && good_rps >= 18 && seconds < 30.0,
          Format("matching pennies %d/20, rock-paper-scissors %d/20, %.1fs",
                 good_mp, good_rps, seconds)};
}

// 2. Iteration bound and fixed-mode stopping point.
Outcome IterationBound() {
  const int64_t t = IterationsNeeded(0.1, 0.01, 10, 10);
  Rng rng(2);
  const PayoffMatrix a = testing::RandomDense(10, 10, rng);
  const SolveResult result = Solve(a, FixedConfig(0.1, 0.01, 2));
  return {t == 14737 && result.iterations == t,
          Format("iterations_needed = %lld, run stopped at %lld",
                 static_cast<long long>(t),
                 static_cast<long long>(result.iterations))};
}

// 3. One-step potential inequality, by exact expectation over all (a, b).
Outcome PotentialInequality() {
  const auto start = Clock::now();
  Rng rng(3);
  int checked = 0;
  int violations = 0;
  double worst_ratio = 0.0;
  double worst_reference_mismatch = 0.0;
  for (int game = 0; game < 20; ++game) {
    const int size = game < 10 ? 2 : 3;
    const testing::DenseRows rows = testing::RandomRows(size, size, rng);
    const PayoffMatrix a = PayoffMatrix::FromRows(rows);
    QueryLedger ledger;
    const MatrixOracle oracle(a, ledger);
    for (int state = 0; state < 100; ++state) {
      std::vector<double> x(size), y(size);
      for (double& v : x) v = 4.0 * rng.Uniform();
      for (double& v : y) v = 4.0 * rng.Uniform();
      const double eta = Eta(1 + rng.UniformIndex(1000), Schedule::Anytime());

      std::vector<double> u(size), v(size);
      for (int j = 0; j < size; ++j) {
        for (int i = 0; i < size; ++i) u[j] -= x[i] * rows[i][j];
      }
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) v[i] += rows[i][j] * y[j];
      }
      const std::vector<double> p = GibbsExact(u);
      const std::vector<double> q = GibbsExact(v);
      const double log_phi = LogPotential(oracle, x, y);
      double expected_ratio = 0.0;  // E[Phi'] / Phi
      long double reference_expected = 0.0L;
      for (int col = 0; col < size; ++col) {
        for (int row = 0; row < size; ++row) {
          std::vector<double> x2 = x, y2 = y;
          x2[row] += eta;
          y2[col] += eta;
          expected_ratio +=
              p[col] * q[row] * std::exp(LogPotential(oracle, x2, y2) - log_phi);
          reference_expected += static_cast<long double>(p[col]) * q[row] *
                                testing::ReferencePotential(rows, x2, y2);
        }
      }
      const long double reference_phi =
          testing::ReferencePotential(rows, x, y);
      worst_reference_mismatch = std::max(
          worst_reference_mismatch,
          static_cast<double>(std::abs(reference_expected / reference_phi -
                                       expected_ratio)));
      const double bound = 1.0 + 3.0 * eta * eta;
      worst_ratio = std::max(worst_ratio, expected_ratio / bound);
      violations += expected_ratio > bound * (1.0 + 1e-10);
      ++checked;
    }
  }
  const double seconds = Seconds(start);
  return {violations == 0 && worst_reference_mismatch < 1e-9 &&
              seconds < 5.0,
          Format("%d states, %d violations, max E[Phi']/(Phi(1+3eta^2)) = "
                 "%.6f, reference mismatch %.2e, %.2fs",
                 checked, violations, worst_ratio, worst_reference_mismatch,
                 seconds)};
}

// Holm step-down: number of rejections at family-wise level alpha.
int HolmRejections(std::vector<double> p_values, double alpha) {
  std::sort(p_values.begin(), p_values.end());
  const int k = static_cast<int>(p_values.size());
  for (int i = 0; i < k; ++i) {
    if (p_values[i] > alpha / (k - i)) return i;
  }
  return k;
}

// 4. Sampler equivalence by chi-squared goodness of fit.
Outcome SamplerEquivalence() {
  const auto start = Clock::now();
  constexpr int kDraws = 100000;
  constexpr int kSupport = 4;
  constexpr double kMass = 1.0;
  Rng rng(4);
  std::vector<double> p_values;
  double min_p = 1.0;
  for (int instance = 0; instance < 20; ++instance) {
    const bool dense = instance < 10;
    const PayoffMatrix a = dense ? testing::RandomDense(20, 20, rng).ToSparse()
                                 : testing::RandomSparse(16, 16, 4, rng);
    const int n = a.rows();
    const int m = a.cols();
    SupportTree weights(n);
    std::vector<double> raw(kSupport);
    double raw_total = 0.0;
    for (double& w : raw) raw_total += (w = 0.5 + rng.Uniform());
    std::vector<int> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = i;
    for (int k = 0; k < kSupport; ++k) {
      std::swap(rows[k], rows[k + rng.UniformIndex(n - k)]);
      weights.Add(rows[k], kMass * raw[k] / raw_total);
    }
    QueryLedger ledger;
    const MatrixOracle oracle(a, ledger);
    const ScoreOperator op(oracle, ScoreOperator::Kind::kBob);
    std::vector<double> u(m);
    for (int j = 0; j < m; ++j) u[j] = EvaluateScore(weights, op, j).score;
    const std::vector<double> target = GibbsExact(u);
    const double u_max = UMaxScan(weights, op);

    std::vector<int64_t> exact(m, 0), rejection(m, 0), two_regime(m, 0);
    Rng draw_rng(4, 100 + instance);
    TwoRegimeOptions options;
    options.u_max_approx = u_max;
    for (int k = 0; k < kDraws; ++k) {
      ++exact[SampleCategorical(target, draw_rng)];
      ++rejection[RejectionGibbs(weights, op, u_max, draw_rng).index];
      ++two_regime[TwoRegimeGibbs(weights, op, draw_rng, options).index];
    }
    for (const auto* counts : {&exact, &rejection, &two_regime}) {
      const double p = testing::ChiSquaredPValue(*counts, target);
      p_values.push_back(p);
      min_p = std::min(min_p, p);
    }
  }
  const int raw_rejections = static_cast<int>(
      std::count_if(p_values.begin(), p_values.end(),
                    [](double p) { return p < 0.01; }));
  const int holm_rejections = HolmRejections(p_values, 0.01);
  const double seconds = Seconds(start);
  return {holm_rejections == 0 && seconds < 60.0,
          Format("%zu chi-squared tests, family-wise (Holm) rejections at "
                 "0.01: %d, raw rejections at 0.01: %d, min p = %.4f, %.1fs",
                 p_values.size(), holm_rejections, raw_rejections, min_p,
                 seconds)};
}

// 5. Query-count exactness from the ledger.
Outcome QueryCounts() {
  Rng rng(5);
  const testing::DenseRows rows = testing::RandomRows(5, 7, rng);
  std::string detail;
  bool pass = true;

  {
    const PayoffMatrix dense = PayoffMatrix::FromRows(rows);
    Solver solver(dense, FixedConfig(0.3, 0.1, 5));
    const int64_t t = solver.TargetIterations();
    solver.Run(t);
    const uint64_t used = solver.state().score_update_queries.total();
    const bool ok = solver.state().score_update_queries.dense_entry_queries() ==
                        used &&
                    used == static_cast<uint64_t>(t * (5 + 7));
    pass &= ok;
    detail += Format("dense %llu = T(n+m) %lld; ",
                     static_cast<unsigned long long>(used),
                     static_cast<long long>(t * 12));
  }
  {
    // Every row and column at maximum sparsity: equality.
    const PayoffMatrix full = PayoffMatrix::FromRows(rows).ToSparse();
    Solver solver(full,
                  FixedConfig(0.3, 0.1, 6, Backend::kSparseIncremental));
    const int64_t t = solver.TargetIterations();
    solver.Run(t);
    const uint64_t used = solver.state().score_update_queries.total();
    const uint64_t bound = t * (full.row_sparsity() + full.col_sparsity());
    pass &= used == bound;
    detail += Format("sparse full %llu = T(s+d) %llu; ",
                     static_cast<unsigned long long>(used),
                     static_cast<unsigned long long>(bound));
  }
  {
    PayoffMatrix irregular = PayoffMatrix::Sparse(
        5, 7,
        {{0, 0, 0.5}, {0, 3, -1}, {0, 6, 0.25}, {1, 1, 1}, {2, 2, -0.5},
         {2, 4, 0.75}, {3, 5, 1}, {3, 0, -0.25}, {4, 6, -1}, {4, 1, 0.5}});
    SolverConfig config = FixedConfig(0.3, 0.1, 7, Backend::kSparseIncremental);
    config.record_moves = true;
    Solver solver(irregular, config);
    const int64_t t = solver.TargetIterations();
    solver.Run(t);
    uint64_t exact = 0;
    for (const Move& move : solver.state().moves) {
      exact += irregular.RowNonzeroCount(move.alice) +
               irregular.ColNonzeroCount(move.bob);
    }
    const uint64_t used = solver.state().score_update_queries.total();
    const uint64_t bound =
        t * (irregular.row_sparsity() + irregular.col_sparsity());
    pass &= used == exact && used <= bound && used < bound;
    detail += Format("sparse irregular %llu = sum over moves %llu <= "
                     "T(s+d) %llu",
                     static_cast<unsigned long long>(used),
                     static_cast<unsigned long long>(exact),
                     static_cast<unsigned long long>(bound));
  }
  return {pass, detail};
}

// 6. Anytime accuracy bound at fixed checkpoints.
Outcome AnytimeGuarantee() {
  const auto start = Clock::now();
  constexpr int kRuns = 50;
  const std::vector<int64_t> checkpoints = {100, 1000, 10000};
  int good = 0;
  double worst_ratio = 0.0;
  for (int run = 0; run < kRuns; ++run) {
    Rng rng(6, run);
    const PayoffMatrix a = testing::RandomDense(10, 10, rng);
    SolverConfig config;
    config.schedule = Schedule::Anytime();
    config.delta = 0.1;
    config.seed = 600 + run;
    config.max_iterations = checkpoints.back();
    Solver solver(a, config);
    bool ok = true;
    for (int64_t checkpoint : checkpoints) {
      solver.Run(checkpoint - solver.state().iteration);
      const double gap = solver.CurrentGap().gap;
      const double bound = AnytimeBound(checkpoint, 10, 10, 0.1);
      worst_ratio = std::max(worst_ratio, gap / bound);
      ok &= gap <= bound;
    }
    good += ok;
  }
  const double seconds = Seconds(start);
  return {good >= 0.85 * kRuns && seconds < 120.0,
          Format("%d/%d runs within the bound at all checkpoints, max "
                 "gap/bound = %.4f, %.1fs",
                 good, kRuns, worst_ratio, seconds)};
}

// 7. LP reduction end to end on the box LP.
Outcome BoxLp() {
  const auto start = Clock::now();
  const StandardLp lp(PayoffMatrix::FromRows({{1, 0}, {0, 1}}), {1, 1},
                      {0.3, 0.4}, 1.0, 2.0);
  int good = 0;
  bool rounds_ok = true;
  std::string estimates;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    SolverConfig base;
    base.seed = seed;
    const LpSolveResult result = BinarySearchOpt(lp, 0.1, 0.1, base);
    rounds_ok &= result.rounds.size() == 5;
    good += result.opt_estimate >= 0.6 && result.opt_estimate <= 0.8 &&
            result.solution.has_value() &&
            result.solution->max_violation <= 0.1;
    estimates += Format("%s%.4f", estimates.empty() ? "" : " ",
                        result.opt_estimate);
  }
  const double seconds = Seconds(start);
  return {good >= 9 && rounds_ok && seconds < 300.0,
          Format("%d/10 runs in [0.6, 0.8] with violation <= 0.1, "
                 "rounds %s, estimates [%s], %.1fs",
                 good, rounds_ok ? "5" : "WRONG", estimates.c_str(), seconds)};
}

// 8. Feasible LP points map into the nonpositive cone of the game matrix.
Outcome EmbeddingSoundness() {
  const auto start = Clock::now();
  Rng rng(8);
  int checked = 0;
  double worst = -1.0;
  while (checked < 100) {
    const int n = 1 + rng.UniformIndex(4);
    const int m = 1 + rng.UniformIndex(4);
    const testing::DenseRows a = testing::RandomRows(n, m, rng);
    std::vector<double> y(m), b(m), c(n);
    double y_sum = 0.0;
    for (double& v : y) y_sum += (v = rng.Uniform());
    for (double& v : b) v = 2.0 * rng.Uniform() - 1.0;
    const std::vector<long double> ay = testing::ReferenceAy(a, y);
    double big_r = y_sum;
    for (int i = 0; i < n; ++i) {
      c[i] = static_cast<double>(ay[i]) + 0.2 * rng.Uniform();
      big_r = std::max(big_r, std::abs(c[i]));
    }
    long double objective = 0.0L;
    for (int j = 0; j < m; ++j) {
      objective += static_cast<long double>(b[j]) * y[j];
    }
    const double alpha =
        static_cast<double>(objective) - 0.1 * rng.Uniform();
    if (std::abs(alpha) > big_r) continue;
    const StandardLp lp(PayoffMatrix::FromRows(a), b, c, big_r, 1.0);
    const testing::DenseRows g =
        testing::ToRows(BuildGameMatrix(lp, alpha).matrix);
    std::vector<double> point(m + 2);
    for (int j = 0; j < m; ++j) point[j] = y[j] / (2.0 * big_r);
    point[m] = 0.5 - y_sum / (2.0 * big_r);
    point[m + 1] = 0.5;
    for (long double v : testing::ReferenceAy(g, point)) {
      worst = std::max(worst, static_cast<double>(v));
    }
    ++checked;
  }
  const double seconds = Seconds(start);
  return {worst <= 1e-12 && seconds < 5.0,
          Format("%d LPs, max (A'''y)_i = %.3e, %.2fs", checked, worst,
                 seconds)};
}

// 9. Long anytime run: finite weights and drift-free incremental scores.
Outcome StabilitySoak() {
  const auto start = Clock::now();
  constexpr int kSize = 50;
  constexpr int64_t kIterations = 1000000;
  Rng rng(9);
  const testing::DenseRows rows = testing::RandomRows(kSize, kSize, rng);
  SolverConfig config;
  config.schedule = Schedule::Anytime();
  config.seed = 9;
  config.max_iterations = kIterations;

  const PayoffMatrix matrix = PayoffMatrix::FromRows(rows);
  Solver dense(matrix, config);
  dense.Run(kIterations);
  const std::vector<double> x = dense.state().alice.Dense();
  const std::vector<double> y = dense.state().bob.Dense();
  const std::vector<long double> atx = testing::ReferenceAtx(rows, x);
  const std::vector<long double> ay = testing::ReferenceAy(rows, y);
  const ScoreState& scores = *dense.state().scores;
  bool finite = true;
  double drift = 0.0;
  for (int k = 0; k < kSize; ++k) {
    finite &= std::isfinite(scores.u[k]) && std::isfinite(scores.v[k]);
    drift = std::max(drift, static_cast<double>(std::abs(scores.u[k] + atx[k])));
    drift = std::max(drift, static_cast<double>(std::abs(scores.v[k] - ay[k])));
  }

  // Same run length on the tree backend: probabilities against G(recomputed).
  config.backend = Backend::kSparseIncremental;
  const PayoffMatrix sparse = PayoffMatrix::FromRows(rows).ToSparse();
  Solver tree(sparse, config);
  tree.Run(kIterations);
  const std::vector<long double> tree_atx =
      testing::ReferenceAtx(rows, tree.state().alice.Dense());
  const std::vector<long double> tree_ay =
      testing::ReferenceAy(rows, tree.state().bob.Dense());
  std::vector<long double> u_ref(kSize);
  for (int j = 0; j < kSize; ++j) u_ref[j] = -tree_atx[j];
  const std::vector<double> p_ref = testing::ReferenceGibbs(u_ref);
  const std::vector<double> q_ref = testing::ReferenceGibbs(tree_ay);
  const GibbsTrees& trees = *tree.state().trees;
  double tree_error = 0.0;
  for (int k = 0; k < kSize; ++k) {
    const double p = trees.bob.Probability(k);
    const double q = trees.alice.Probability(k);
    finite &= std::isfinite(p) && std::isfinite(q) &&
              std::isfinite(trees.bob.StoredWeight(k)) &&
              std::isfinite(trees.alice.StoredWeight(k));
    tree_error = std::max(tree_error, std::abs(p - p_ref[k]));
    tree_error = std::max(tree_error, std::abs(q - q_ref[k]));
  }
  finite &= std::isfinite(trees.bob.LogTotal()) &&
            std::isfinite(trees.alice.LogTotal());
  const double seconds = Seconds(start);
  return {finite && drift <= 1e-6 && tree_error <= 1e-6 && seconds < 120.0,
          Format("finite %s, score drift %.3e, tree probability error %.3e, "
                 "%.1fs for 2 x 1e6 iterations",
                 finite ? "yes" : "NO", drift, tree_error, seconds)};
}

// 10. Scalar inequality on a grid.
Outcome ScalarInequality() {
  constexpr int kPoints = 10000;
  int violations = 0;
  double min_margin = 1.0;
  for (int k = 0; k < kPoints; ++k) {
    const double x = -1.0 + 2.0 * k / (kPoints - 1);
    const double margin = 1.0 + x + 0.75 * x * x - std::exp(x);
    min_margin = std::min(min_margin, margin);
    violations += margin < 0.0;
  }
  return {violations == 0,
          Format("%d points, %d violations, min margin %.3e", kPoints,
                 violations, min_margin)};
}

}  // namespace
}  // namespace zsg

int main(int argc, char** argv) {
  using Criterion = std::function<zsg::Outcome()>;
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"known-value games", zsg::KnownValueGames},
      {"iteration bound", zsg::IterationBound},
      {"one-step potential inequality", zsg::PotentialInequality},
      {"sampler equivalence", zsg::SamplerEquivalence},
      {"query-count exactness", zsg::QueryCounts},
      {"anytime guarantee", zsg::AnytimeGuarantee},
      {"LP reduction on the box LP", zsg::BoxLp},
      {"embedding soundness", zsg::EmbeddingSoundness},
      {"numerical stability soak", zsg::StabilitySoak},
      {"scalar inequality", zsg::ScalarInequality},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(number)) continue;
    const zsg::Outcome outcome = criteria[k].second();
    failures += !outcome.pass;
    std::printf("%s %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL", number,
                criteria[k].first, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
