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

#include "zsg/cost_model.h"

#include <cmath>

#include "zsg/errors.h"
#include "zsg/solver.h"

namespace zsg {

CostReport QuantumCostModel(const CostModelInput& input) {
  if (input.n < 1 || input.m < 1 || input.s < 1 || input.d < 1) {
    throw DomainError("cost model sizes must be positive");
  }
  CostReport report;
  report.iterations =
      IterationsNeeded(input.epsilon, input.delta, input.n, input.m);
  report.classical_dense_per_iteration = input.n + input.m;
  report.classical_sparse_per_iteration = input.s + input.d;
  const auto t = static_cast<double>(report.iterations);
  report.classical_dense_total = t * report.classical_dense_per_iteration;
  report.classical_sparse_total = t * report.classical_sparse_per_iteration;

  const double eps = input.epsilon;
  report.quantum_dense_projection =
      std::sqrt(static_cast<double>(input.n + input.m)) / std::pow(eps, 3.0);
  report.quantum_sparse_projection =
      std::sqrt(static_cast<double>(input.s)) / std::pow(eps, 3.5);

  if (input.lp_primal_bound && input.lp_dual_bound) {
    const double big_r = *input.lp_primal_bound;
    const double small_r = *input.lp_dual_bound;
    if (!(big_r > 0.0 && small_r > 0.0)) {
      throw DomainError("LP norm bounds must be positive");
    }
    const double gamma = big_r * (small_r + 1.0) / eps;
    report.lp_gamma = gamma;
    report.lp_quantum_dense_projection =
        (std::sqrt(static_cast<double>(input.n)) +
         std::sqrt(static_cast<double>(input.m))) *
        std::pow(gamma, 3.0);
    report.lp_quantum_sparse_projection =
        std::sqrt(static_cast<double>(input.s)) * std::pow(gamma, 3.5);
  }
  report.projection_note =
      "quantum figures are asymptotic projections with constants and "
      "polylogarithmic factors omitted; they are not measured counts";
  return report;
}

}  // namespace zsg
