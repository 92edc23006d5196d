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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spdlog/logger.h"
#include "spdlog/sinks/ostream_sink.h"
#include "zsg/cost_model.h"
#include "zsg/errors.h"
#include "zsg/gibbs.h"
#include "zsg/lp.h"
#include "zsg/lp_io.h"
#include "zsg/matrix_io.h"
#include "zsg/rng.h"
#include "zsg/solver.h"

namespace zsg::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Bad flags or unusable paths; maps to kExitInputError.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string command;
  std::string input;
  double epsilon = 0.1;
  double delta = 0.1;
  uint64_t seed = 0;
  std::string schedule = "fixed";
  std::string backend = "dense";
  std::optional<int64_t> max_iterations;
  std::string trace_path;
  int64_t trace_period = 0;
  std::string output;
  bool timing = false;
  // gibbs-bench
  int64_t samples = 100000;
  int support = 4;
  double mass = 1.0;
  // cost-model
  int64_t n = 0;
  int64_t m = 0;
  int64_t s = 0;
  int64_t d = 0;
  std::optional<double> lp_primal_bound;
  std::optional<double> lp_dual_bound;
};

spdlog::level::level_enum LevelFromEnv() {
  const char* value = std::getenv("ZSG_LOG");
  if (value == nullptr || *value == '\0') return spdlog::level::warn;
  const std::string name(value);
  if (name == "off") return spdlog::level::off;
  const spdlog::level::level_enum level = spdlog::level::from_str(name);
  return level == spdlog::level::off ? spdlog::level::warn : level;
}

void ValidateCommon(const CliConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw InputError("--epsilon must lie in (0, 1)");
  }
  if (!(config.delta > 0.0 && config.delta < 1.0 / 3.0)) {
    throw InputError("--delta must lie in (0, 1/3)");
  }
  if (config.max_iterations && *config.max_iterations <= 0) {
    throw InputError("--max-iterations must be positive");
  }
}

Backend ResolveBackend(const std::string& name) {
  const std::optional<Backend> backend = ParseBackend(name);
  if (!backend) {
    throw InputError("unknown backend '" + name +
                     "' (dense, sparse, rejection, two-regime)");
  }
  return *backend;
}

Schedule ResolveSchedule(const CliConfig& config) {
  if (config.schedule == "fixed") {
    return Schedule::FixedAccuracy(config.epsilon);
  }
  if (config.schedule == "anytime") {
    if (!config.max_iterations) {
      throw InputError("the anytime schedule needs --max-iterations");
    }
    return Schedule::Anytime();
  }
  throw InputError("unknown schedule '" + config.schedule +
                   "' (anytime, fixed)");
}

Json LedgerJson(const QueryLedger& ledger) {
  return Json{{"dense_entry", ledger.dense_entry_queries()},
              {"sparse_row", ledger.sparse_row_queries()},
              {"sparse_col", ledger.sparse_col_queries()},
              {"total", ledger.total()}};
}

Json ProbabilitiesJson(const Strategy& strategy) {
  return Json(std::vector<double>(strategy.probs().begin(),
                                  strategy.probs().end()));
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Json SolveGame(const CliConfig& config, spdlog::logger& log) {
  ValidateCommon(config);
  const Backend backend = ResolveBackend(config.backend);
  PayoffMatrix matrix = ReadMatrixFile(config.input);
  if (backend != Backend::kExactDense && !matrix.has_sparse_form()) {
    matrix = matrix.ToSparse();
  }

  SolverConfig solver_config;
  solver_config.schedule = ResolveSchedule(config);
  solver_config.delta = config.delta;
  solver_config.seed = config.seed;
  solver_config.backend = backend;
  solver_config.max_iterations = config.max_iterations;
  if (solver_config.schedule.kind == ScheduleKind::kAnytime) {
    solver_config.value_epsilon = config.epsilon;
  }

  std::ofstream trace;
  if (!config.trace_path.empty()) {
    trace.open(config.trace_path);
    if (!trace) {
      throw InputError("cannot write trace file '" + config.trace_path + "'");
    }
    int64_t target = solver_config.max_iterations.value_or(INT64_MAX);
    if (solver_config.schedule.kind == ScheduleKind::kFixedAccuracy) {
      target = std::min(target, IterationsNeeded(config.epsilon, config.delta,
                                                 matrix.rows(),
                                                 matrix.cols()));
    }
    solver_config.gap_check_period =
        config.trace_period > 0 ? config.trace_period
                                : std::max<int64_t>(1, target / 100);
    solver_config.trace = [&trace](const IterationStats& stats) {
      Json record{{"t", stats.t}, {"eta", stats.eta}};
      record["log_potential"] = stats.log_potential
                                    ? Json(*stats.log_potential)
                                    : Json(nullptr);
      record["gap"] = stats.gap ? Json(*stats.gap) : Json(nullptr);
      record["queries"] = LedgerJson(stats.queries);
      trace << record.dump() << '\n';
    };
  }

  Solver solver(matrix, solver_config);
  log.info("solve-game: {}x{} matrix, backend {}, {} iterations",
           matrix.rows(), matrix.cols(), BackendName(backend),
           solver.TargetIterations());
  const Clock::time_point start = Clock::now();
  const SolveResult result = solver.RunToCompletion();
  const double seconds = Seconds(start);
  log.info("solve-game: gap {:.6g} after {:.3f}s", result.duality_gap,
           seconds);

  Json doc{{"command", "solve-game"},
           {"input", config.input},
           {"rows", matrix.rows()},
           {"cols", matrix.cols()},
           {"schedule", config.schedule},
           {"epsilon", config.epsilon},
           {"delta", config.delta},
           {"backend", BackendName(backend)},
           {"seed", config.seed},
           {"iterations", result.iterations},
           {"value_estimate", result.value_estimate},
           {"duality_gap", result.duality_gap},
           {"alice_strategy", ProbabilitiesJson(result.alice)},
           {"bob_strategy", ProbabilitiesJson(result.bob)}};
  doc["queries"] = Json{{"score_update", LedgerJson(result.score_update_queries)},
                        {"sampling", LedgerJson(result.sampling_queries)},
                        {"evaluation", LedgerJson(result.evaluation_queries)},
                        {"total", LedgerJson(result.ledger)}};
  if (config.timing) doc["wall_time_seconds"] = seconds;
  return doc;
}

Json SolveLp(const CliConfig& config, spdlog::logger& log) {
  ValidateCommon(config);
  const Backend backend = ResolveBackend(config.backend);
  StandardLp lp = ReadLpFile(config.input);
  if (backend != Backend::kExactDense && !lp.a().has_sparse_form()) {
    lp = StandardLp(lp.a().ToSparse(), lp.b(), lp.c(), lp.primal_bound(),
                    lp.dual_bound());
  }
  SolverConfig base;
  base.seed = config.seed;
  base.backend = backend;
  base.max_iterations = config.max_iterations;

  log.info("solve-lp: n={} m={}, {} rounds at game accuracy {:.6g}",
           lp.constraints(), lp.variables(),
           BinarySearchRounds(lp.primal_bound(), config.epsilon),
           GameEpsilon(lp, config.epsilon));
  const Clock::time_point start = Clock::now();
  const LpSolveResult result =
      BinarySearchOpt(lp, config.epsilon, config.delta, base);
  const double seconds = Seconds(start);

  Json rounds = Json::array();
  for (const RoundLog& round : result.rounds) {
    rounds.push_back(Json{{"round", round.round},
                          {"alpha", round.alpha},
                          {"verdict", VerdictName(round.verdict)},
                          {"lambda_estimate", round.lambda_estimate},
                          {"duality_gap", round.duality_gap},
                          {"iterations", round.iterations}});
  }
  Json doc{{"command", "solve-lp"},
           {"input", config.input},
           {"constraints", lp.constraints()},
           {"variables", lp.variables()},
           {"primal_bound", lp.primal_bound()},
           {"dual_bound", lp.dual_bound()},
           {"epsilon", config.epsilon},
           {"delta", config.delta},
           {"backend", BackendName(backend)},
           {"seed", config.seed},
           {"game_epsilon", result.game_epsilon},
           {"opt_estimate", result.opt_estimate},
           {"interval", Json{{"lower", result.lower}, {"upper", result.upper}}},
           {"degenerate", result.degenerate}};
  if (result.solution) {
    doc["y_hat"] = result.solution->y_hat;
    doc["objective"] = result.solution->objective;
    doc["max_violation"] = result.solution->max_violation;
    doc["h"] = result.solution->h;
  } else {
    doc["y_hat"] = nullptr;
    doc["objective"] = nullptr;
    doc["max_violation"] = nullptr;
    doc["h"] = nullptr;
  }
  doc["rounds"] = std::move(rounds);
  doc["queries"] = LedgerJson(result.queries);
  if (config.timing) doc["wall_time_seconds"] = seconds;
  return doc;
}

struct BenchOutcome {
  std::vector<int64_t> counts;
  int64_t proposals = 0;
  QueryLedger ledger = {};
};

Json BenchEntry(std::string_view name, const BenchOutcome& outcome,
                const std::vector<double>& target, int64_t samples) {
  std::vector<double> empirical(outcome.counts.size());
  for (size_t j = 0; j < empirical.size(); ++j) {
    empirical[j] = static_cast<double>(outcome.counts[j]) / samples;
  }
  return Json{
      {"backend", name},
      {"samples", samples},
      {"tv_distance", TotalVariation(empirical, target)},
      {"mean_proposals", static_cast<double>(outcome.proposals) / samples},
      {"queries_per_sample",
       static_cast<double>(outcome.ledger.total()) / samples},
      {"queries", LedgerJson(outcome.ledger)}};
}

Json GibbsBench(const CliConfig& config, spdlog::logger& log) {
  if (config.samples <= 0) throw InputError("--samples must be positive");
  if (config.support <= 0) throw InputError("--support must be positive");
  if (!(config.mass > 0.0)) throw InputError("--mass must be positive");
  PayoffMatrix matrix = ReadMatrixFile(config.input);
  if (!matrix.has_sparse_form()) matrix = matrix.ToSparse();
  const int n = matrix.rows();
  const int m = matrix.cols();

  // Cumulative Alice-side weights x on a random support; the benchmark
  // samples Bob's distribution over columns, G(-A^T x).
  Rng setup_rng(config.seed, 10);
  const int support = std::min(config.support, n);
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  for (int k = 0; k < support; ++k) {
    std::swap(rows[k], rows[k + setup_rng.UniformIndex(n - k)]);
  }
  std::vector<double> raw(support);
  double raw_total = 0.0;
  for (double& w : raw) raw_total += (w = 0.5 + setup_rng.Uniform());
  SupportTree weights(n);
  for (int k = 0; k < support; ++k) {
    weights.Add(rows[k], config.mass * raw[k] / raw_total);
  }

  std::vector<double> scores(m);
  {
    QueryLedger scratch;
    const MatrixOracle oracle(matrix, scratch);
    const ScoreOperator op(oracle, ScoreOperator::Kind::kBob);
    for (int j = 0; j < m; ++j) scores[j] = EvaluateScore(weights, op, j).score;
  }
  const std::vector<double> target = GibbsExact(scores);
  const int64_t samples = config.samples;
  log.info("gibbs-bench: {}x{} matrix, support {}, {} samples", n, m, support,
           samples);

  Json reports = Json::array();
  {
    BenchOutcome outcome{std::vector<int64_t>(m, 0)};
    const MatrixOracle oracle(matrix, outcome.ledger);
    const ScoreOperator op(oracle, ScoreOperator::Kind::kBob);
    std::vector<double> u(m);
    for (int j = 0; j < m; ++j) u[j] = EvaluateScore(weights, op, j).score;
    const std::vector<double> probs = GibbsExact(u);
    Rng rng(config.seed, 11);
    for (int64_t k = 0; k < samples; ++k) {
      ++outcome.counts[SampleCategorical(probs, rng)];
    }
    reports.push_back(BenchEntry("exact", outcome, target, samples));
  }
  {
    BenchOutcome outcome{std::vector<int64_t>(m, 0)};
    const MatrixOracle oracle(matrix, outcome.ledger);
    const ScoreOperator op(oracle, ScoreOperator::Kind::kBob);
    const double u_max = UMaxScan(weights, op);
    Rng rng(config.seed, 12);
    for (int64_t k = 0; k < samples; ++k) {
      const GibbsSample draw = RejectionGibbs(weights, op, u_max, rng);
      ++outcome.counts[draw.index];
      outcome.proposals += draw.proposals_used;
    }
    reports.push_back(BenchEntry("rejection", outcome, target, samples));
  }
  {
    BenchOutcome outcome{std::vector<int64_t>(m, 0)};
    const MatrixOracle oracle(matrix, outcome.ledger);
    const ScoreOperator op(oracle, ScoreOperator::Kind::kBob);
    TwoRegimeOptions options;
    options.u_max_approx = UMaxScan(weights, op);
    Rng rng(config.seed, 13);
    for (int64_t k = 0; k < samples; ++k) {
      const GibbsSample draw = TwoRegimeGibbs(weights, op, rng, options);
      ++outcome.counts[draw.index];
      outcome.proposals += draw.proposals_used;
    }
    reports.push_back(BenchEntry("two-regime", outcome, target, samples));
  }

  std::vector<int> support_rows(rows.begin(), rows.begin() + support);
  std::sort(support_rows.begin(), support_rows.end());
  return Json{{"command", "gibbs-bench"},
              {"input", config.input},
              {"rows", n},
              {"cols", m},
              {"seed", config.seed},
              {"samples", samples},
              {"support_rows", support_rows},
              {"weight_mass", weights.Total()},
              {"queries_per_score_evaluation", support},
              {"backends", std::move(reports)}};
}

Json CostModel(const CliConfig& config) {
  ValidateCommon(config);
  CostModelInput input;
  if (!config.input.empty()) {
    const PayoffMatrix matrix = ReadMatrixFile(config.input).ToSparse();
    input.n = matrix.rows();
    input.m = matrix.cols();
    input.s = std::max(1, matrix.row_sparsity());
    input.d = std::max(1, matrix.col_sparsity());
  } else {
    if (config.n <= 0 || config.m <= 0) {
      throw InputError("cost-model needs an input matrix or --rows/--cols");
    }
    input.n = config.n;
    input.m = config.m;
    input.s = config.s > 0 ? config.s : config.m;
    input.d = config.d > 0 ? config.d : config.n;
  }
  input.epsilon = config.epsilon;
  input.delta = config.delta;
  input.lp_primal_bound = config.lp_primal_bound;
  input.lp_dual_bound = config.lp_dual_bound;
  const CostReport report = QuantumCostModel(input);

  Json doc{{"command", "cost-model"},
           {"rows", input.n},
           {"cols", input.m},
           {"row_sparsity", input.s},
           {"col_sparsity", input.d},
           {"epsilon", input.epsilon},
           {"delta", input.delta},
           {"iterations", report.iterations},
           {"classical_dense_per_iteration",
            report.classical_dense_per_iteration},
           {"classical_sparse_per_iteration",
            report.classical_sparse_per_iteration},
           {"classical_dense_total", report.classical_dense_total},
           {"classical_sparse_total", report.classical_sparse_total},
           {"quantum_dense_projection", report.quantum_dense_projection},
           {"quantum_sparse_projection", report.quantum_sparse_projection}};
  if (report.lp_gamma) {
    doc["lp"] = Json{
        {"gamma", *report.lp_gamma},
        {"quantum_dense_projection", *report.lp_quantum_dense_projection},
        {"quantum_sparse_projection", *report.lp_quantum_sparse_projection}};
  }
  doc["projection_note"] = report.projection_note;
  return doc;
}

void AddSolverFlags(CLI::App* command, CliConfig& config) {
  command->add_option("--epsilon", config.epsilon, "Target accuracy in (0, 1)");
  command->add_option("--delta", config.delta,
                      "Failure probability in (0, 1/3)");
  command->add_option("--seed", config.seed, "Random seed");
  command->add_option("--backend", config.backend,
                      "dense | sparse | rejection | two-regime");
  command->add_option("--max-iterations", config.max_iterations,
                      "Iteration cap (required for --schedule anytime)");
  command->add_option("--output", config.output,
                      "Result file (default: standard output)");
  command->add_flag("--timing", config.timing,
                    "Include wall time in the result document");
}

void WriteDocument(const CliConfig& config, const Json& doc,
                   std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (config.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file || !(file << text)) {
    throw InputError("cannot write output file '" + config.output + "'");
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  spdlog::logger log("zsg", sink);
  log.set_level(LevelFromEnv());
  log.set_pattern("[%l] %v");

  CliConfig config;
  CLI::App app("Approximate equilibria of zero-sum matrix games", "zsg");
  app.require_subcommand(1);

  CLI::App* solve_game =
      app.add_subcommand("solve-game", "Solve a matrix game from a file");
  solve_game->add_option("input", config.input, "Matrix file")->required();
  AddSolverFlags(solve_game, config);
  solve_game->add_option("--schedule", config.schedule, "anytime | fixed");
  solve_game->add_option("--trace", config.trace_path,
                         "Write JSON-lines iteration records here");
  solve_game->add_option("--trace-period", config.trace_period,
                         "Iterations between trace records");

  CLI::App* solve_lp =
      app.add_subcommand("solve-lp", "Solve a standard-form LP from a file");
  solve_lp->add_option("input", config.input, "LP file")->required();
  AddSolverFlags(solve_lp, config);

  CLI::App* bench = app.add_subcommand(
      "gibbs-bench", "Compare the Gibbs samplers against the exact law");
  bench->add_option("input", config.input, "Matrix file")->required();
  bench->add_option("--samples", config.samples, "Draws per backend");
  bench->add_option("--seed", config.seed, "Random seed");
  bench->add_option("--support", config.support,
                    "Rows in the support of the generated strategy");
  bench->add_option("--mass", config.mass,
                    "l1 mass of the generated strategy");
  bench->add_option("--output", config.output,
                    "Report file (default: standard output)");

  CLI::App* cost = app.add_subcommand(
      "cost-model", "Query-cost projections for a game or LP instance");
  cost->add_option("input", config.input, "Optional matrix file");
  cost->add_option("--rows", config.n, "n");
  cost->add_option("--cols", config.m, "m");
  cost->add_option("--row-sparsity", config.s, "s (default m)");
  cost->add_option("--col-sparsity", config.d, "d (default n)");
  cost->add_option("--epsilon", config.epsilon, "Target accuracy");
  cost->add_option("--delta", config.delta, "Failure probability");
  cost->add_option("--lp-primal-bound", config.lp_primal_bound, "R");
  cost->add_option("--lp-dual-bound", config.lp_dual_bound, "r");
  cost->add_option("--output", config.output,
                   "Report file (default: standard output)");

  std::vector<const char*> argv{"zsg"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    Json doc;
    if (solve_game->parsed()) {
      doc = SolveGame(config, log);
    } else if (solve_lp->parsed()) {
      doc = SolveLp(config, log);
    } else if (bench->parsed()) {
      doc = GibbsBench(config, log);
    } else {
      doc = CostModel(config);
    }
    WriteDocument(config, doc, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << config.input << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    // DomainError and DimensionError.
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  }
}

}  // namespace zsg::cli
