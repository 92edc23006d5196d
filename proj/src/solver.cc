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

#include "zsg/solver.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "zsg/errors.h"

namespace zsg {
namespace {

void ValidateConfig(const PayoffMatrix& matrix, const SolverConfig& config) {
  if (!(config.delta > 0.0 && config.delta < 1.0 / 3.0)) {
    throw DomainError("delta must lie in (0, 1/3)");
  }
  if (config.schedule.kind == ScheduleKind::kFixedAccuracy &&
      !(config.schedule.epsilon > 0.0 && config.schedule.epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  if (config.schedule.kind == ScheduleKind::kAnytime &&
      !config.max_iterations) {
    throw DomainError("anytime schedule needs max_iterations");
  }
  if (config.max_iterations && *config.max_iterations < 1) {
    throw DomainError("max_iterations must be at least 1");
  }
  if (config.gap_check_period < 0) {
    throw DomainError("gap_check_period must be nonnegative");
  }
  if ((config.backend == Backend::kSparseIncremental ||
       config.backend == Backend::kTwoRegime) &&
      !matrix.has_sparse_form()) {
    throw StorageError(std::string(BackendName(config.backend)) +
                       " backend needs a matrix with sparse storage");
  }
}

// Draws from G(scores) using scratch for the cumulative weights.
int SampleFromScores(std::span<const double> scores, Rng& rng,
                     std::vector<double>& scratch) {
  const double max_score = *std::max_element(scores.begin(), scores.end());
  scratch.resize(scores.size());
  double total = 0;
  for (size_t j = 0; j < scores.size(); ++j) {
    total += std::exp(scores[j] - max_score);
    scratch[j] = total;
  }
  const double target = rng.Uniform() * total;
  auto it = std::upper_bound(scratch.begin(), scratch.end(), target);
  return static_cast<int>(
      std::min<ptrdiff_t>(it - scratch.begin(), scores.size() - 1));
}

SolverState InitialState(const PayoffMatrix& matrix,
                         const SolverConfig& config) {
  SolverState state{.alice = SupportTree(matrix.rows()),
                    .bob = SupportTree(matrix.cols()),
                    .bob_rng = Rng(config.seed, 0),
                    .alice_rng = Rng(config.seed, 1)};
  if (config.backend == Backend::kExactDense) {
    state.scores = ScoreState::Zero(matrix.rows(), matrix.cols());
  } else if (config.backend == Backend::kSparseIncremental) {
    state.trees = GibbsTrees::Uniform(matrix.rows(), matrix.cols());
  }
  return state;
}

}  // namespace

Schedule Schedule::FixedAccuracy(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  return {ScheduleKind::kFixedAccuracy, epsilon};
}

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kExactDense:
      return "dense";
    case Backend::kSparseIncremental:
      return "sparse";
    case Backend::kRejection:
      return "rejection";
    case Backend::kTwoRegime:
      return "two-regime";
  }
  return "unknown";
}

std::optional<Backend> ParseBackend(std::string_view name) {
  for (Backend b : {Backend::kExactDense, Backend::kSparseIncremental,
                    Backend::kRejection, Backend::kTwoRegime}) {
    if (BackendName(b) == name) return b;
  }
  return std::nullopt;
}

double Eta(int64_t t, const Schedule& schedule) {
  if (t < 1) throw DomainError("iterations are numbered from 1");
  if (schedule.kind == ScheduleKind::kFixedAccuracy) {
    return schedule.epsilon / 4.0;
  }
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(t)));
}

int64_t IterationsNeeded(double epsilon, double delta, int64_t n, int64_t m) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0 / 3.0)) {
    throw DomainError("delta must lie in (0, 1/3)");
  }
  if (n < 1 || m < 1) throw DomainError("game dimensions must be positive");
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  return static_cast<int64_t>(
      std::ceil(16.0 * std::log(nm / delta) / (epsilon * epsilon)));
}

double AnytimeBound(int64_t t, int64_t n, int64_t m, double delta) {
  if (t < 1) throw DomainError("iterations are numbered from 1");
  const double td = static_cast<double>(t);
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  return 2.0 / std::sqrt(td) *
         (3.0 * std::log(td) + std::log(nm) + std::log(1.0 / delta) + 2.0);
}

double LogPotential(const MatrixOracle& oracle, std::span<const double> x,
                    std::span<const double> y) {
  std::vector<double> ay;
  std::vector<double> atx;
  MatrixProducts(oracle, x, y, ay, atx);
  for (double& s : atx) s = -s;
  return LogSumExp(atx) + LogSumExp(ay);
}

double EstimateValue(const MatrixOracle& oracle, const Strategy& x,
                     const Strategy& y, double epsilon, Rng& rng) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (x.size() != oracle.rows() || y.size() != oracle.cols()) {
    throw DimensionError("strategy sizes do not match the matrix");
  }
  const auto plays = static_cast<int64_t>(std::ceil(8.0 / (epsilon * epsilon)));
  auto cumulative = [](const Strategy& s) {
    std::vector<double> c(s.size());
    double acc = 0;
    for (int k = 0; k < s.size(); ++k) c[k] = acc += s[k];
    return c;
  };
  const std::vector<double> cx = cumulative(x);
  const std::vector<double> cy = cumulative(y);
  auto draw = [&rng](const std::vector<double>& c) {
    const double target = rng.Uniform() * c.back();
    auto it = std::upper_bound(c.begin(), c.end(), target);
    return static_cast<int>(
        std::min<ptrdiff_t>(it - c.begin(), c.size() - 1));
  };
  double sum = 0;
  for (int64_t k = 0; k < plays; ++k) {
    const int i = draw(cx);
    const int j = draw(cy);
    sum += oracle.Entry(i, j);
  }
  return sum / static_cast<double>(plays);
}

Solver::Solver(const PayoffMatrix& matrix, SolverConfig config)
    : matrix_(&matrix),
      config_(std::move(config)),
      state_(InitialState(matrix, config_)) {
  ValidateConfig(matrix, config_);
}

Solver::Solver(const PayoffMatrix& matrix, SolverConfig config,
               SolverState state)
    : matrix_(&matrix), config_(std::move(config)), state_(std::move(state)) {
  ValidateConfig(matrix, config_);
  if (state_.alice.dimension() != matrix.rows() ||
      state_.bob.dimension() != matrix.cols()) {
    throw DimensionError("solver state does not match the matrix");
  }
  const bool has_scores = state_.scores.has_value();
  const bool has_trees = state_.trees.has_value();
  if (has_scores != (config_.backend == Backend::kExactDense) ||
      has_trees != (config_.backend == Backend::kSparseIncremental)) {
    throw DomainError("solver state was produced by a different backend");
  }
}

Move Solver::SampleMoves() {
  switch (config_.backend) {
    case Backend::kExactDense:
      return Move{SampleFromScores(state_.scores->u, state_.bob_rng, scratch_),
                  SampleFromScores(state_.scores->v, state_.alice_rng,
                                   scratch_)};
    case Backend::kSparseIncremental:
      return Move{state_.trees->bob.Sample(state_.bob_rng),
                  state_.trees->alice.Sample(state_.alice_rng)};
    case Backend::kRejection:
    case Backend::kTwoRegime: {
      const MatrixOracle oracle(*matrix_, state_.sampling_queries);
      const ScoreOperator bob_scores(oracle, ScoreOperator::Kind::kBob);
      const ScoreOperator alice_scores(oracle, ScoreOperator::Kind::kAlice);
      GibbsSample a;
      GibbsSample b;
      if (config_.backend == Backend::kRejection) {
        a = RejectionGibbs(state_.alice, bob_scores,
                           UMaxScan(state_.alice, bob_scores), state_.bob_rng);
        b = RejectionGibbs(state_.bob, alice_scores,
                           UMaxScan(state_.bob, alice_scores),
                           state_.alice_rng);
      } else {
        a = TwoRegimeGibbs(state_.alice, bob_scores, state_.bob_rng);
        b = TwoRegimeGibbs(state_.bob, alice_scores, state_.alice_rng);
      }
      state_.rejection_rounds += a.proposals_used + b.proposals_used;
      return Move{a.index, b.index};
    }
  }
  return {};
}

void Solver::Step() {
  const int64_t t = state_.iteration + 1;
  const double eta = Eta(t, config_.schedule);
  const Move move = SampleMoves();
  state_.bob.Add(move.bob, eta);
  state_.alice.Add(move.alice, eta);
  if (state_.scores) {
    ScoreUpdateDense(*state_.scores,
                     MatrixOracle(*matrix_, state_.score_update_queries), move,
                     eta);
  } else if (state_.trees) {
    ScoreUpdateSparse(*state_.trees,
                      MatrixOracle(*matrix_, state_.score_update_queries), move,
                      eta);
  }
  state_.iteration = t;
  state_.eta_sum += eta;
  if (config_.record_moves) state_.moves.push_back(move);
  if (config_.gap_check_period > 0 && config_.trace &&
      t % config_.gap_check_period == 0) {
    EmitTrace(eta);
  }
}

void Solver::Run(int64_t iterations) {
  for (int64_t k = 0; k < iterations; ++k) Step();
}

int64_t Solver::TargetIterations() const {
  if (config_.schedule.kind == ScheduleKind::kFixedAccuracy) {
    const int64_t needed =
        IterationsNeeded(config_.schedule.epsilon, config_.delta,
                         matrix_->rows(), matrix_->cols());
    return config_.max_iterations ? std::min(needed, *config_.max_iterations)
                                  : needed;
  }
  return *config_.max_iterations;
}

SolveResult Solver::RunToCompletion() {
  Run(TargetIterations() - state_.iteration);
  return Finish();
}

Strategy Solver::AliceStrategy() const {
  return Strategy::FromWeights(state_.alice.Dense());
}

Strategy Solver::BobStrategy() const {
  return Strategy::FromWeights(state_.bob.Dense());
}

GapReport Solver::CurrentGap() {
  return EvaluateDualityGap(MatrixOracle(*matrix_, state_.evaluation_queries),
                            AliceStrategy(), BobStrategy());
}

double Solver::CurrentLogPotential() {
  if (state_.scores) {
    return LogSumExp(state_.scores->u) + LogSumExp(state_.scores->v);
  }
  if (state_.trees) {
    return state_.trees->bob.LogTotal() + state_.trees->alice.LogTotal();
  }
  return LogPotential(MatrixOracle(*matrix_, state_.evaluation_queries),
                      state_.alice.Dense(), state_.bob.Dense());
}

void Solver::EmitTrace(double eta) {
  IterationStats stats;
  stats.t = state_.iteration;
  stats.eta = eta;
  stats.log_potential = CurrentLogPotential();
  stats.gap = CurrentGap().gap;
  stats.queries = TotalQueries();
  config_.trace(stats);
}

QueryLedger Solver::TotalQueries() const {
  return state_.score_update_queries + state_.sampling_queries +
         state_.evaluation_queries;
}

SolveResult Solver::Finish() {
  if (state_.iteration == 0) {
    throw DomainError("no iterations have been run");
  }
  Strategy alice = AliceStrategy();
  Strategy bob = BobStrategy();
  const MatrixOracle evaluation(*matrix_, state_.evaluation_queries);
  const double gap = EvaluateDualityGap(evaluation, alice, bob).gap;
  double value;
  if (config_.exact_value) {
    value = BilinearValue(evaluation, alice, bob);
  } else {
    const double epsilon =
        config_.schedule.kind == ScheduleKind::kFixedAccuracy
            ? config_.schedule.epsilon
            : config_.value_epsilon;
    Rng rng(config_.seed, 2);
    value = EstimateValue(evaluation, alice, bob, epsilon, rng);
  }
  return SolveResult{.alice = std::move(alice),
                     .bob = std::move(bob),
                     .value_estimate = value,
                     .duality_gap = gap,
                     .iterations = state_.iteration,
                     .ledger = TotalQueries(),
                     .score_update_queries = state_.score_update_queries,
                     .sampling_queries = state_.sampling_queries,
                     .evaluation_queries = state_.evaluation_queries};
}

SolveResult Solve(const PayoffMatrix& matrix, const SolverConfig& config) {
  return Solver(matrix, config).RunToCompletion();
}

}  // namespace zsg
