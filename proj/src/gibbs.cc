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

#include "zsg/gibbs.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zsg/errors.h"

namespace zsg {
namespace {

constexpr double kShiftTolerance = 1e-9;

void CheckAcceptance(double probability, const char* branch) {
  if (probability > 1.0 + 1e-12) {
    throw SolverError(std::string(branch) + " acceptance probability " +
                      std::to_string(probability) +
                      " exceeds 1; sampler preconditions are violated");
  }
}

[[noreturn]] void RoundCapReached(const char* sampler) {
  throw SolverError(std::string(sampler) + " gave up after " +
                    std::to_string(kMaxRejectionRounds) + " rejection rounds");
}

}  // namespace

std::vector<double> GibbsExact(std::span<const double> scores) {
  if (scores.empty()) throw DomainError("Gibbs distribution of an empty vector");
  double max_score = -std::numeric_limits<double>::infinity();
  for (double s : scores) {
    if (!std::isfinite(s)) throw DomainError("non-finite score");
    max_score = std::max(max_score, s);
  }
  std::vector<double> probs(scores.size());
  double total = 0;
  for (size_t j = 0; j < scores.size(); ++j) {
    probs[j] = std::exp(scores[j] - max_score);
    total += probs[j];
  }
  for (double& p : probs) p /= total;
  return probs;
}

double LogSumExp(std::span<const double> scores) {
  if (scores.empty()) throw DomainError("log-sum-exp of an empty vector");
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double total = 0;
  for (double s : scores) total += std::exp(s - max_score);
  return max_score + std::log(total);
}

double TotalVariation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DimensionError("total variation of vectors of different lengths");
  }
  double sum = 0;
  for (size_t j = 0; j < p.size(); ++j) sum += std::abs(p[j] - q[j]);
  return 0.5 * sum;
}

int SampleCategorical(std::span<const double> weights, Rng& rng) {
  std::vector<double> cumulative(weights.size());
  double total = 0;
  for (size_t j = 0; j < weights.size(); ++j) {
    total += weights[j];
    cumulative[j] = total;
  }
  if (!(total > 0.0)) {
    throw EmptyDistributionError("categorical weights sum to zero");
  }
  const double target = rng.Uniform() * total;
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return static_cast<int>(std::min<ptrdiff_t>(it - cumulative.begin(),
                                              weights.size() - 1));
}

ScoreState ScoreState::Zero(int rows, int cols) {
  return ScoreState{std::vector<double>(cols, 0.0),
                    std::vector<double>(rows, 0.0)};
}

void ScoreUpdateDense(ScoreState& state, const MatrixOracle& oracle, Move move,
                      double eta) {
  const int n = oracle.rows();
  const int m = oracle.cols();
  for (int j = 0; j < m; ++j) state.u[j] -= eta * oracle.Entry(move.alice, j);
  for (int i = 0; i < n; ++i) state.v[i] += eta * oracle.Entry(i, move.bob);
}

GibbsTrees GibbsTrees::Uniform(int rows, int cols) {
  return GibbsTrees{WeightTree::FromWeights(std::vector<double>(cols, 1.0)),
                    WeightTree::FromWeights(std::vector<double>(rows, 1.0))};
}

void ScoreUpdateSparse(GibbsTrees& trees, const MatrixOracle& oracle,
                       Move move, double eta) {
  const PayoffMatrix& a = oracle.matrix();
  const int row_count = a.RowNonzeroCount(move.alice);
  for (int k = 0; k < row_count; ++k) {
    const Nonzero nz = oracle.RowNonzero(move.alice, k);
    trees.bob.Multiply(nz.index, std::exp(-eta * nz.value));
  }
  const int col_count = a.ColNonzeroCount(move.bob);
  for (int k = 0; k < col_count; ++k) {
    const Nonzero nz = oracle.ColNonzero(move.bob, k);
    trees.alice.Multiply(nz.index, std::exp(eta * nz.value));
  }
}

int ScoreOperator::weight_dim() const {
  return kind_ == Kind::kAlice ? oracle_.cols() : oracle_.rows();
}

int ScoreOperator::score_dim() const {
  return kind_ == Kind::kAlice ? oracle_.rows() : oracle_.cols();
}

int ScoreOperator::row_sparsity() const {
  return kind_ == Kind::kAlice ? oracle_.matrix().col_sparsity()
                               : oracle_.matrix().row_sparsity();
}

double ScoreOperator::Entry(int i, int j) const {
  switch (kind_) {
    case Kind::kPlain:
      return oracle_.Entry(i, j);
    case Kind::kBob:
      return -oracle_.Entry(i, j);
    case Kind::kAlice:
      return oracle_.Entry(j, i);
  }
  return 0;
}

int ScoreOperator::RowNonzeroCount(int i) const {
  return kind_ == Kind::kAlice ? oracle_.matrix().ColNonzeroCount(i)
                               : oracle_.matrix().RowNonzeroCount(i);
}

Nonzero ScoreOperator::RowNonzero(int i, int k) const {
  switch (kind_) {
    case Kind::kPlain:
      return oracle_.RowNonzero(i, k);
    case Kind::kBob: {
      Nonzero nz = oracle_.RowNonzero(i, k);
      nz.value = -nz.value;
      return nz;
    }
    case Kind::kAlice:
      return oracle_.ColNonzero(i, k);
  }
  return {};
}

ScoreAndWeight EvaluateScore(const SupportTree& weights,
                             const ScoreOperator& op, int j) {
  ScoreAndWeight out{0.0, 0.0};
  const std::span<const int> support = weights.support();
  const WeightTree& tree = weights.tree();
  const double scale = tree.global_scale();
  for (size_t slot = 0; slot < support.size(); ++slot) {
    const double w = tree.StoredWeight(static_cast<int>(slot)) * scale;
    const double entry = op.Entry(support[slot], j);
    out.score += w * entry;
    out.abs_weight += w * std::abs(entry);
  }
  return out;
}

double UMaxScan(const SupportTree& weights, const ScoreOperator& op) {
  if (weights.support().empty()) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < op.score_dim(); ++j) {
    best = std::max(best, EvaluateScore(weights, op, j).score);
  }
  return best;
}

GibbsSample RejectionGibbs(const SupportTree& weights, const ScoreOperator& op,
                           double u_max, Rng& rng) {
  const uint64_t queries_before = op.oracle().ledger().total();
  const int m = op.score_dim();
  for (int64_t round = 1; round <= kMaxRejectionRounds; ++round) {
    const int j = static_cast<int>(rng.UniformIndex(m));
    const double u = EvaluateScore(weights, op, j).score;
    if (u > u_max + kShiftTolerance) {
      throw SolverError("rejection sampler shift " + std::to_string(u_max) +
                        " is below score " + std::to_string(u) +
                        " of coordinate " + std::to_string(j));
    }
    if (rng.Uniform() < std::exp(u - u_max)) {
      return GibbsSample{j, round,
                         op.oracle().ledger().total() - queries_before};
    }
  }
  RoundCapReached("rejection sampler");
}

double RampQ(double w) { return std::clamp(2.0 * w - 1.0, 0.0, 1.0); }

namespace {

struct TwoRegimeSetup {
  double beta;
  double u_tilde;
  int sparsity;
  // Probability of running the uniform branch: 16em / N.
  double uniform_probability;
  double normalizer;
};

TwoRegimeSetup PrepareTwoRegime(const SupportTree& weights,
                                const ScoreOperator& op,
                                std::optional<double> beta,
                                std::optional<double> u_max_approx) {
  if (!op.oracle().matrix().has_sparse_form()) {
    throw StorageError("two-regime sampler needs the sparse form");
  }
  TwoRegimeSetup setup;
  const double mass = weights.Total();
  setup.beta = beta.value_or(std::max(1.0, mass));
  if (setup.beta < 1.0 || mass > setup.beta * (1.0 + 1e-12)) {
    throw DomainError("two-regime sampler needs 1 <= beta and ||x||_1 <= beta");
  }
  setup.u_tilde = u_max_approx ? *u_max_approx : UMaxScan(weights, op);
  setup.sparsity = op.row_sparsity();
  const double m = op.score_dim();
  const double uniform_mass = 16.0 * std::numbers::e * m;
  if (setup.sparsity == 0) {
    setup.uniform_probability = 1.0;
    setup.normalizer = uniform_mass;
    return setup;
  }
  const double log_ratio = setup.u_tilde +
                           std::log(64.0 * setup.beta * setup.sparsity) -
                           std::log(uniform_mass);
  setup.uniform_probability = 1.0 / (1.0 + std::exp(log_ratio));
  setup.normalizer =
      uniform_mass +
      64.0 * setup.beta * setup.sparsity * std::exp(setup.u_tilde);
  return setup;
}

}  // namespace

GibbsSample TwoRegimeGibbs(const SupportTree& weights, const ScoreOperator& op,
                           Rng& rng, const TwoRegimeOptions& options) {
  const uint64_t queries_before = op.oracle().ledger().total();
  const TwoRegimeSetup setup =
      PrepareTwoRegime(weights, op, options.beta, options.u_max_approx);
  const int m = op.score_dim();
  const double mass = weights.Total();
  // Acceptance bounds valid whenever every u_j <= u~ + kShiftTolerance.
  const double shift_slack = std::exp(kShiftTolerance);
  const double uniform_bound =
      std::exp(setup.u_tilde + kShiftTolerance - 1.0) / 16.0;
  auto done = [&](int j, int64_t round) {
    return GibbsSample{j, round, op.oracle().ledger().total() - queries_before};
  };

  for (int64_t round = 1; round <= kMaxRejectionRounds; ++round) {
    if (rng.Uniform() < setup.uniform_probability) {
      const int j = static_cast<int>(rng.UniformIndex(m));
      // The coin is drawn before u_j is evaluated: coins above the bound on
      // the acceptance probability reject without touching the oracle.
      const double coin = rng.Uniform();
      if (coin >= uniform_bound) continue;
      const ScoreAndWeight sw = EvaluateScore(weights, op, j);
      const double q = RampQ(sw.abs_weight);
      const double accept = (1.0 - q * q) * std::exp(sw.score - 1.0) / 16.0;
      CheckAcceptance(accept, "uniform-branch");
      if (coin < accept) return done(j, round);
      continue;
    }
    // Support branch: i ~ x_i / beta, or nothing.
    if (rng.Uniform() * setup.beta >= mass) continue;
    const int i = weights.Sample(rng);
    const int k = static_cast<int>(rng.UniformIndex(setup.sparsity));
    if (k >= op.RowNonzeroCount(i)) continue;
    const Nonzero nz = op.RowNonzero(i, k);
    // w_j >= x_i |M_ij| bounds the acceptance probability by 1/(64 x_i).
    const double coin = rng.Uniform();
    if (coin * 64.0 * weights.Weight(i) >= shift_slack) continue;
    const ScoreAndWeight sw = EvaluateScore(weights, op, nz.index);
    const double q = RampQ(sw.abs_weight);
    if (q == 0.0) continue;
    if (sw.score > setup.u_tilde + kShiftTolerance) {
      throw SolverError("two-regime sampler: u_max estimate " +
                        std::to_string(setup.u_tilde) + " below score " +
                        std::to_string(sw.score));
    }
    const double accept = std::abs(nz.value) * q * q *
                          std::exp(sw.score - setup.u_tilde) /
                          (64.0 * sw.abs_weight);
    CheckAcceptance(accept, "support-branch");
    if (coin < accept) return done(nz.index, round);
  }
  RoundCapReached("two-regime sampler");
}

BranchYields TwoRegimeYields(const SupportTree& weights,
                             const ScoreOperator& op, int j, double beta,
                             double u_max_approx) {
  const TwoRegimeSetup setup =
      PrepareTwoRegime(weights, op, beta, u_max_approx);
  const ScoreAndWeight sw = EvaluateScore(weights, op, j);
  const double q = RampQ(sw.abs_weight);
  const double m = op.score_dim();

  BranchYields yields{0.0, 0.0, setup.normalizer};
  yields.uniform_branch = setup.uniform_probability * (1.0 / m) *
                          (1.0 - q * q) * std::exp(sw.score - 1.0) / 16.0;
  if (q == 0.0 || setup.sparsity == 0) return yields;
  // Enumerate every (i, k) path that lands on column j.
  double path_mass = 0;
  for (int i : weights.support()) {
    const int count = op.RowNonzeroCount(i);
    for (int k = 0; k < count; ++k) {
      const Nonzero nz = op.RowNonzero(i, k);
      if (nz.index != j) continue;
      path_mass += (weights.Weight(i) / setup.beta) *
                   (1.0 / setup.sparsity) * std::abs(nz.value);
    }
  }
  yields.support_branch = (1.0 - setup.uniform_probability) * path_mass * q *
                          q * std::exp(sw.score - setup.u_tilde) /
                          (64.0 * sw.abs_weight);
  return yields;
}

}  // namespace zsg
