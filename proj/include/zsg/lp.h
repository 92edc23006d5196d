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

#ifndef ZSG_LP_H_
#define ZSG_LP_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "zsg/game.h"
#include "zsg/solver.h"

namespace zsg {

// max b^T y  s.t.  A y <= c, y >= 0, with entries of A and b in [-1, 1],
// |c_i| <= R, some optimal y with ||y||_1 <= R and some optimal dual x with
// ||x||_1 <= r. R and r are caller-certified; wrong bounds void every
// accuracy guarantee below.
class StandardLp {
 public:
  // Throws DimensionError / DomainError when the normalization fails.
  StandardLp(PayoffMatrix a, std::vector<double> b, std::vector<double> c,
             double primal_bound, double dual_bound);

  const PayoffMatrix& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const std::vector<double>& c() const { return c_; }
  // R and r.
  double primal_bound() const { return primal_bound_; }
  double dual_bound() const { return dual_bound_; }
  int constraints() const { return a_.rows(); }
  int variables() const { return a_.cols(); }

 private:
  PayoffMatrix a_;
  std::vector<double> b_;
  std::vector<double> c_;
  double primal_bound_;
  double dual_bound_;
};

// Zero-sum game whose value is <= 0 exactly when OPT >= alpha is feasible.
// Columns are (y: m, z: 1, h: 1); rows are
//   ( e^T,  1, -1     )
//   (-e^T, -1,  1     )
//   (-b^T,  0,  alpha/R)
//   ( A,    0, -c/R   )
// The first two rows force sum(y) + z = h, hence h = 1/2 on the simplex.
struct GameEmbedding {
  PayoffMatrix matrix;
  double alpha;
  double scale;  // R
};

// Throws DomainError when |alpha| > R.
GameEmbedding BuildGameMatrix(const StandardLp& lp, double alpha);

// Game accuracy epsilon / (6 R (r + 1)) that certifies an epsilon decision.
double GameEpsilon(const StandardLp& lp, double epsilon);

enum class Verdict { kOptBelowAlpha, kOptAtLeastAlphaMinusEps };
std::string_view VerdictName(Verdict verdict);

struct ThresholdDecision {
  Verdict verdict;
  double alpha;
  // max_i (A''' y~)_i for the returned strategy: an upper bound on the game
  // value, within the game accuracy of it when the solve succeeded.
  double lambda_estimate;
  double game_epsilon;
  double duality_gap;
  // Bob's strategy over the m + 2 embedded columns.
  Strategy game_strategy;
  int64_t iterations;
  QueryLedger queries;
};

// Solves the embedded game with FixedAccuracy(game epsilon) and failure
// probability delta. lambda_estimate > game epsilon means the value is
// positive, so OPT < alpha; otherwise the value is at most twice the game
// epsilon and OPT >= alpha - epsilon. The schedule and delta of `base` are
// replaced; backend, seed and iteration cap are kept.
ThresholdDecision DecideThreshold(const StandardLp& lp, double alpha,
                                  double epsilon, double delta,
                                  const SolverConfig& base);

struct LpSolution {
  std::vector<double> y_hat;
  double objective = 0;      // b^T y_hat
  double max_violation = 0;  // max_i ((A y_hat)_i - c_i)
  double opt_estimate = 0;
  double h = 0;              // last embedded coordinate
  double h_deviation = 0;    // |h - 1/2|
};

// y_hat = 2R y from a game strategy (y, z, h) over m + 2 columns. When the
// strategy satisfies A''' y''' <= 2 game_epsilon, then
//   b^T y_hat >= alpha - 6 R game_epsilon  and  A y_hat <= c + 6 R game_epsilon.
// Throws SolverError when |h - 1/2| > game_epsilon, which means the game
// was not solved to the claimed accuracy.
LpSolution ExtractPrimal(const Strategy& game_strategy, const StandardLp& lp,
                         double game_epsilon, double alpha);

// ceil(log2(2R / epsilon)).
int BinarySearchRounds(double primal_bound, double epsilon);

struct RoundLog {
  int round;
  double alpha;
  Verdict verdict;
  double lambda_estimate;
  double duality_gap;
  int64_t iterations;
};

struct LpSolveResult {
  // Extraction from the last round that answered kOptAtLeastAlphaMinusEps;
  // empty when the search is degenerate.
  std::optional<LpSolution> solution;
  // No round found OPT >= alpha - epsilon: OPT < -R + epsilon.
  bool degenerate = false;
  double opt_estimate = 0;  // final lower end of the interval
  double lower = 0;
  double upper = 0;
  double game_epsilon = 0;
  std::vector<RoundLog> rounds;
  QueryLedger queries;
};

// Bisects [-R, R] with DecideThreshold for BinarySearchRounds rounds, each
// with failure budget delta / rounds. Returns OPT within epsilon and a
// y_hat with A y_hat <= c + epsilon e, with probability >= 1 - delta.
LpSolveResult BinarySearchOpt(const StandardLp& lp, double epsilon,
                              double delta, const SolverConfig& base);

}  // namespace zsg

#endif  // ZSG_LP_H_
