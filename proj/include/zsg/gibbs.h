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

#ifndef ZSG_GIBBS_H_
#define ZSG_GIBBS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zsg/game.h"
#include "zsg/rng.h"
#include "zsg/weight_tree.h"

namespace zsg {

// G(s) = e^s / ||e^s||_1, evaluated after subtracting max_j s_j.
// Throws DomainError for an empty or non-finite score vector.
std::vector<double> GibbsExact(std::span<const double> scores);

// log sum_j e^{s_j}, stable for any finite scores.
double LogSumExp(std::span<const double> scores);

// Total variation distance between two distributions of equal length.
double TotalVariation(std::span<const double> p, std::span<const double> q);

// Index drawn from nonnegative weights by binary search on the cumulative
// sum. Throws EmptyDistributionError if all weights are zero.
int SampleCategorical(std::span<const double> weights, Rng& rng);

// A move pair of one iteration: Bob's column a and Alice's row b.
struct Move {
  int bob;
  int alice;

  bool operator==(const Move&) const = default;
};

// Explicitly maintained scores u = -A^T x (length m) and v = Ay (length n).
struct ScoreState {
  std::vector<double> u;
  std::vector<double> v;

  static ScoreState Zero(int rows, int cols);
};

// x += eta e_b, y += eta e_a, reflected in the scores:
//   u_j -= eta A_bj (m entry queries), v_i += eta A_ia (n entry queries).
void ScoreUpdateDense(ScoreState& state, const MatrixOracle& oracle, Move move,
                      double eta);

// Gibbs weights P = e^u (over columns) and Q = e^v (over rows) held in sum
// trees, up to the tree's own power-of-two scaling.
struct GibbsTrees {
  WeightTree bob;
  WeightTree alice;

  // All-ones weights: zero scores.
  static GibbsTrees Uniform(int rows, int cols);
};

// Multiplies the nonzero-affected leaves: P_j *= e^{-eta A_bj} over the
// nonzeros of row b and Q_i *= e^{eta A_ia} over the nonzeros of column a.
// Costs nnz(row b) sparse row queries plus nnz(column a) sparse column
// queries. Throws StorageError without a sparse form.
void ScoreUpdateSparse(GibbsTrees& trees, const MatrixOracle& oracle,
                       Move move, double eta);

// Linear score map seen by a sampler: scores_j = sum_i w_i M_ij for a
// weight vector w over the rows of M.
//   kPlain: M = A,   w = x, scores x^T A over columns.
//   kBob:   M = -A,  w = x, scores u = -A^T x over columns.
//   kAlice: M = A^T, w = y, scores v = Ay over rows.
// Queries go to the underlying oracle, so the ledger sees the real cost.
class ScoreOperator {
 public:
  enum class Kind { kPlain, kBob, kAlice };

  ScoreOperator(const MatrixOracle& oracle, Kind kind)
      : oracle_(oracle), kind_(kind) {}

  int weight_dim() const;
  int score_dim() const;
  // Maximum nonzeros in a row of M.
  int row_sparsity() const;

  double Entry(int i, int j) const;
  int RowNonzeroCount(int i) const;
  Nonzero RowNonzero(int i, int k) const;

  const MatrixOracle& oracle() const { return oracle_; }
  Kind kind() const { return kind_; }

 private:
  MatrixOracle oracle_;
  Kind kind_;
};

struct ScoreAndWeight {
  double score;       // u_j = sum_i w_i M_ij
  double abs_weight;  // w_j = sum_i w_i |M_ij|
};

// Evaluates one score from the support of the weights: exactly
// |support| entry queries.
ScoreAndWeight EvaluateScore(const SupportTree& weights,
                             const ScoreOperator& op, int j);

// max_j u_j by evaluating every score: score_dim * |support| entry queries.
// Returns 0 for empty weights (all scores vanish).
double UMaxScan(const SupportTree& weights, const ScoreOperator& op);

struct GibbsSample {
  int index = 0;
  // Rejection rounds until acceptance (0 for tree/CDF samplers).
  int64_t proposals_used = 0;
  // Oracle calls made while drawing this sample.
  uint64_t queries_used = 0;
};

inline constexpr int64_t kMaxRejectionRounds = 1'000'000;

// Rejection sampler for G(u): propose j uniformly, evaluate u_j on demand,
// accept with probability e^{u_j - u_max}. Requires u_max >= max_j u_j;
// a proposal with u_j > u_max + 1e-9 throws SolverError, as does reaching
// kMaxRejectionRounds.
GibbsSample RejectionGibbs(const SupportTree& weights, const ScoreOperator& op,
                           double u_max, Rng& rng);

// Ramp separating small and large w_j: clamp(2w - 1, 0, 1).
double RampQ(double w);

struct TwoRegimeOptions {
  // Defaults to max(1, ||weights||_1).
  std::optional<double> beta;
  // Any value >= max_j u_j; defaults to the exact UMaxScan value.
  std::optional<double> u_max_approx;
};

// Exact sampler for G(u) mixing two proposal schemes.
//
// With N = 16em + 64 beta s e^{u~}, each round picks
//   the uniform branch with probability 16em/N: propose j uniformly and
//     accept with probability (1 - Q(w_j)^2) e^{u_j - 1} / 16;
//   the support branch otherwise: draw i with probability w_i/beta from the
//     weight tree (nothing with the leftover probability), k uniform in
//     [s], take the k-th nonzero (j, M_ij) of row i if it exists, and
//     accept with probability |M_ij| Q(w_j)^2 e^{u_j - u~} / (64 w_j).
// Per round, coordinate j is emitted with probability exactly e^{u_j}/N,
// so accepted samples follow G(u). The acceptance coin is drawn first and
// u_j, w_j are evaluated only when it falls below the branch's a-priori
// bound (e^{u~-1}/16, resp. 1/(64 x_i)), so most rejections cost no entry
// queries. Requires the sparse form. Throws
// SolverError when an acceptance probability exceeds one (violated
// preconditions) or after kMaxRejectionRounds.
GibbsSample TwoRegimeGibbs(const SupportTree& weights, const ScoreOperator& op,
                           Rng& rng, const TwoRegimeOptions& options = {});

// Per-round emission probabilities of coordinate j under TwoRegimeGibbs,
// computed by enumerating the proposal paths rather than from the closed
// form. Their sum equals e^{u_j}/normalizer.
struct BranchYields {
  double uniform_branch;
  double support_branch;
  double normalizer;  // N
};
BranchYields TwoRegimeYields(const SupportTree& weights,
                             const ScoreOperator& op, int j, double beta,
                             double u_max_approx);

}  // namespace zsg

#endif  // ZSG_GIBBS_H_
