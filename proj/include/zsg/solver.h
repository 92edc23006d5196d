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

#ifndef ZSG_SOLVER_H_
#define ZSG_SOLVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zsg/game.h"
#include "zsg/gibbs.h"
#include "zsg/rng.h"
#include "zsg/weight_tree.h"

namespace zsg {

enum class ScheduleKind { kAnytime, kFixedAccuracy };

// Step-size schedule: eta(t) = 1/(2 sqrt t) (anytime) or epsilon/4.
struct Schedule {
  ScheduleKind kind = ScheduleKind::kAnytime;
  double epsilon = 0;  // FixedAccuracy only, in (0, 1)

  static Schedule Anytime() { return {ScheduleKind::kAnytime, 0}; }
  static Schedule FixedAccuracy(double epsilon);
};

// How p = G(u) and q = G(v) are maintained and sampled.
enum class Backend {
  // Explicit u, v; each draw exponentiates and binary-searches the CDF.
  // n + m entry queries per iteration.
  kExactDense,
  // Sum trees of e^u, e^v updated through the sparse oracle. At most s + d
  // sparse queries per iteration.
  kSparseIncremental,
  // Scores never stored; uniform-proposal rejection sampling with an exact
  // u_max scan.
  kRejection,
  // Scores never stored; mixture sampler over the sparse oracle.
  kTwoRegime,
};

std::string_view BackendName(Backend backend);
// Accepts "dense", "sparse", "rejection", "two-regime".
std::optional<Backend> ParseBackend(std::string_view name);

struct IterationStats {
  int64_t t = 0;
  double eta = 0;
  std::optional<double> log_potential;
  std::optional<double> gap;
  QueryLedger queries;
};

struct SolverConfig {
  Schedule schedule;
  // Failure probability, in (0, 1/3).
  double delta = 0.1;
  uint64_t seed = 0;
  Backend backend = Backend::kExactDense;
  // Required in anytime mode; caps the run in fixed mode.
  std::optional<int64_t> max_iterations;
  // Iterations between trace records (0 = no trace).
  int64_t gap_check_period = 0;
  std::function<void(const IterationStats&)> trace;
  // Accuracy of the sampled value estimate in anytime mode; fixed mode
  // uses the schedule's epsilon.
  double value_epsilon = 0.05;
  // Report x^T A y exactly instead of the sampled estimate.
  bool exact_value = false;
  // Keep the sequence of sampled move pairs in the state.
  bool record_moves = false;
};

// eta(t); throws DomainError for t < 1.
double Eta(int64_t t, const Schedule& schedule);

// ceil(16 ln(nm/delta) / epsilon^2): iterations after which the fixed-step
// run is epsilon-optimal with probability >= 1 - delta.
int64_t IterationsNeeded(double epsilon, double delta, int64_t n, int64_t m);

// (2/sqrt t)(3 ln t + ln(nm) + ln(1/delta) + 2): accuracy holding for all t
// simultaneously with probability >= 1 - delta in anytime mode.
double AnytimeBound(int64_t t, int64_t n, int64_t m, double delta);

// log Phi = log(sum_j e^{-(A^T x)_j}) + log(sum_i e^{(Ay)_i}) for
// unnormalized weights x (length n) and y (length m).
double LogPotential(const MatrixOracle& oracle, std::span<const double> x,
                    std::span<const double> y);

// Mean payoff of ceil(8/epsilon^2) independent plays (i ~ x, j ~ y); within
// epsilon of x^T A y with probability >= 1 - 2e^{-4}. One entry query per
// play.
double EstimateValue(const MatrixOracle& oracle, const Strategy& x,
                     const Strategy& y, double epsilon, Rng& rng);

// Everything needed to continue a run.
struct SolverState {
  int64_t iteration = 0;
  // sum of eta over completed iterations = ||x||_1 = ||y||_1.
  double eta_sum = 0;
  SupportTree alice;  // cumulative x over rows
  SupportTree bob;    // cumulative y over columns
  std::optional<ScoreState> scores = {};  // kExactDense
  std::optional<GibbsTrees> trees = {};   // kSparseIncremental
  Rng bob_rng;
  Rng alice_rng;
  std::vector<Move> moves = {};
  int64_t rejection_rounds = 0;
  QueryLedger score_update_queries = {};
  QueryLedger sampling_queries = {};
  QueryLedger evaluation_queries = {};
};

// Stochastic fictitious play: each iteration samples Bob's column
// a ~ G(-A^T x) and Alice's row b ~ G(Ay) from the current cumulative
// strategies, then adds eta to y_a and x_b.
class Solver {
 public:
  // Throws DomainError on an invalid config and StorageError when the
  // backend needs a sparse form the matrix lacks.
  Solver(const PayoffMatrix& matrix, SolverConfig config);
  // Resumes from a state produced by an earlier run on the same matrix.
  Solver(const PayoffMatrix& matrix, SolverConfig config, SolverState state);
  // The solver keeps a reference to the matrix.
  Solver(PayoffMatrix&&, SolverConfig) = delete;
  Solver(PayoffMatrix&&, SolverConfig, SolverState) = delete;

  void Step();
  void Run(int64_t iterations);
  // Runs to TargetIterations() and returns Finish().
  SolveResult RunToCompletion();

  // IterationsNeeded for fixed mode (capped by max_iterations), otherwise
  // max_iterations.
  int64_t TargetIterations() const;

  // Normalized strategies, duality gap and value of the current iterate.
  SolveResult Finish();

  Strategy AliceStrategy() const;
  Strategy BobStrategy() const;
  GapReport CurrentGap();
  double CurrentLogPotential();

  const SolverState& state() const { return state_; }
  SolverState ReleaseState() { return std::move(state_); }
  const SolverConfig& config() const { return config_; }
  QueryLedger TotalQueries() const;

 private:
  Move SampleMoves();
  void EmitTrace(double eta);

  const PayoffMatrix* matrix_;
  SolverConfig config_;
  SolverState state_;
  std::vector<double> scratch_;
};

// Solver(matrix, config).RunToCompletion().
SolveResult Solve(const PayoffMatrix& matrix, const SolverConfig& config);

}  // namespace zsg

#endif  // ZSG_SOLVER_H_
