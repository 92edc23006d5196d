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

#include "zsg/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zsg/errors.h"
#include "zsg/rng.h"

namespace zsg {

StandardLp::StandardLp(PayoffMatrix a, std::vector<double> b,
                       std::vector<double> c, double primal_bound,
                       double dual_bound)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      primal_bound_(primal_bound),
      dual_bound_(dual_bound) {
  if (static_cast<int>(b_.size()) != a_.cols()) {
    throw DimensionError("b has " + std::to_string(b_.size()) +
                         " entries, expected " + std::to_string(a_.cols()));
  }
  if (static_cast<int>(c_.size()) != a_.rows()) {
    throw DimensionError("c has " + std::to_string(c_.size()) +
                         " entries, expected " + std::to_string(a_.rows()));
  }
  if (!(primal_bound_ > 0.0) || !std::isfinite(primal_bound_)) {
    throw DomainError("primal bound R must be positive");
  }
  if (!(dual_bound_ > 0.0) || !std::isfinite(dual_bound_)) {
    throw DomainError("dual bound r must be positive");
  }
  for (size_t j = 0; j < b_.size(); ++j) {
    if (!(std::abs(b_[j]) <= 1.0)) {
      throw DomainError("|b_" + std::to_string(j) + "| exceeds 1");
    }
  }
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!(std::abs(c_[i]) <= primal_bound_)) {
      throw DomainError("|c_" + std::to_string(i) + "| = " +
                        std::to_string(std::abs(c_[i])) +
                        " exceeds R; the constraint is redundant and must be "
                        "removed");
    }
  }
}

GameEmbedding BuildGameMatrix(const StandardLp& lp, double alpha) {
  const double big_r = lp.primal_bound();
  if (!(std::abs(alpha) <= big_r)) {
    throw DomainError("|alpha| must not exceed R");
  }
  const int n = lp.constraints();
  const int m = lp.variables();
  const int cols = m + 2;
  const int z = m;
  const int h = m + 1;
  std::vector<MatrixEntry> entries;
  for (int j = 0; j < m; ++j) {
    entries.push_back({0, j, 1.0});
    entries.push_back({1, j, -1.0});
    entries.push_back({2, j, -lp.b()[j]});
  }
  entries.push_back({0, z, 1.0});
  entries.push_back({0, h, -1.0});
  entries.push_back({1, z, -1.0});
  entries.push_back({1, h, 1.0});
  entries.push_back({2, h, alpha / big_r});
  for (const MatrixEntry& e : lp.a().NonzeroEntries()) {
    entries.push_back({e.row + 3, e.col, e.value});
  }
  for (int i = 0; i < n; ++i) {
    entries.push_back({i + 3, h, -lp.c()[i] / big_r});
  }
  PayoffMatrix matrix = PayoffMatrix::Sparse(n + 3, cols, std::move(entries));
  if (lp.a().storage() == Storage::kDense) matrix = matrix.ToDense();
  return GameEmbedding{std::move(matrix), alpha, big_r};
}

double GameEpsilon(const StandardLp& lp, double epsilon) {
  return epsilon /
         (6.0 * lp.primal_bound() * (lp.dual_bound() + 1.0));
}

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kOptBelowAlpha ? "opt_below_alpha"
                                            : "opt_at_least_alpha_minus_eps";
}

ThresholdDecision DecideThreshold(const StandardLp& lp, double alpha,
                                  double epsilon, double delta,
                                  const SolverConfig& base) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  const GameEmbedding game = BuildGameMatrix(lp, alpha);
  const double game_eps = GameEpsilon(lp, epsilon);

  SolverConfig config = base;
  config.schedule = Schedule::FixedAccuracy(game_eps);
  config.delta = delta;
  config.exact_value = true;
  Solver solver(game.matrix, config);
  solver.Run(solver.TargetIterations());
  const GapReport gap = solver.CurrentGap();

  const double lambda = gap.max_row_payoff;
  return ThresholdDecision{
      .verdict = lambda > game_eps ? Verdict::kOptBelowAlpha
                                   : Verdict::kOptAtLeastAlphaMinusEps,
      .alpha = alpha,
      .lambda_estimate = lambda,
      .game_epsilon = game_eps,
      .duality_gap = gap.gap,
      .game_strategy = solver.BobStrategy(),
      .iterations = solver.state().iteration,
      .queries = solver.TotalQueries()};
}

LpSolution ExtractPrimal(const Strategy& game_strategy, const StandardLp& lp,
                         double game_epsilon, double alpha) {
  const int m = lp.variables();
  const int n = lp.constraints();
  if (game_strategy.size() != m + 2) {
    throw DimensionError("game strategy must have m + 2 = " +
                         std::to_string(m + 2) + " entries");
  }
  LpSolution out;
  out.h = game_strategy[m + 1];
  out.h_deviation = std::abs(out.h - 0.5);
  if (out.h_deviation > game_epsilon + 1e-12) {
    throw SolverError("embedded coordinate h = " + std::to_string(out.h) +
                      " is farther than " + std::to_string(game_epsilon) +
                      " from 1/2; the game was not solved to the claimed "
                      "accuracy");
  }
  const double scale = 2.0 * lp.primal_bound();
  out.y_hat.resize(m);
  for (int j = 0; j < m; ++j) out.y_hat[j] = scale * game_strategy[j];
  for (int j = 0; j < m; ++j) out.objective += lp.b()[j] * out.y_hat[j];

  std::vector<double> ay(n, 0.0);
  for (const MatrixEntry& e : lp.a().NonzeroEntries()) {
    ay[e.row] += e.value * out.y_hat[e.col];
  }
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    out.max_violation = std::max(out.max_violation, ay[i] - lp.c()[i]);
  }
  out.opt_estimate = alpha;
  return out;
}

int BinarySearchRounds(double primal_bound, double epsilon) {
  if (!(epsilon > 0.0) || !(primal_bound > 0.0)) {
    throw DomainError("binary search needs positive R and epsilon");
  }
  return std::max(
      0, static_cast<int>(std::ceil(std::log2(2.0 * primal_bound / epsilon))));
}

LpSolveResult BinarySearchOpt(const StandardLp& lp, double epsilon,
                              double delta, const SolverConfig& base) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  const int rounds = BinarySearchRounds(lp.primal_bound(), epsilon);
  const double round_delta = delta / std::max(1, rounds);

  LpSolveResult result;
  result.lower = -lp.primal_bound();
  result.upper = lp.primal_bound();
  result.game_epsilon = GameEpsilon(lp, epsilon);
  std::optional<ThresholdDecision> kept;
  for (int round = 0; round < rounds; ++round) {
    const double alpha = 0.5 * (result.lower + result.upper);
    SolverConfig config = base;
    config.seed = MixSeed(base.seed, 1000 + round);
    ThresholdDecision decision =
        DecideThreshold(lp, alpha, epsilon, round_delta, config);
    result.queries += decision.queries;
    result.rounds.push_back(RoundLog{round, alpha, decision.verdict,
                                     decision.lambda_estimate,
                                     decision.duality_gap,
                                     decision.iterations});
    if (decision.verdict == Verdict::kOptBelowAlpha) {
      result.upper = alpha;
    } else {
      result.lower = alpha;
      kept = std::move(decision);
    }
  }
  result.opt_estimate = result.lower;
  if (!kept) {
    result.degenerate = true;
    return result;
  }
  result.solution =
      ExtractPrimal(kept->game_strategy, lp, kept->game_epsilon, kept->alpha);
  return result;
}

}  // namespace zsg
