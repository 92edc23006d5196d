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

#ifndef ZSG_COST_MODEL_H_
#define ZSG_COST_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>

namespace zsg {

struct CostModelInput {
  int64_t n = 1;
  int64_t m = 1;
  int64_t s = 1;  // max nonzeros per row
  int64_t d = 1;  // max nonzeros per column
  double epsilon = 0.1;
  double delta = 0.1;
  // LP norm bounds; when both are set the LP projections are filled in.
  std::optional<double> lp_primal_bound;
  std::optional<double> lp_dual_bound;
};

// Query counts of the classical implementations next to the asymptotic
// quantum projections. Classical figures are exact per-iteration query
// counts; projections drop constants and polylog factors and are never
// measured quantities.
struct CostReport {
  int64_t iterations = 0;
  int64_t classical_dense_per_iteration = 0;   // n + m entry queries
  int64_t classical_sparse_per_iteration = 0;  // s + d sparse queries
  double classical_dense_total = 0;
  double classical_sparse_total = 0;
  double quantum_dense_projection = 0;   // sqrt(n + m) / eps^3
  double quantum_sparse_projection = 0;  // sqrt(s) / eps^3.5
  // gamma = R (r + 1) / eps
  std::optional<double> lp_gamma;
  std::optional<double> lp_quantum_dense_projection;   // (sqrt n + sqrt m) g^3
  std::optional<double> lp_quantum_sparse_projection;  // sqrt(s) g^3.5
  std::string projection_note;
};

// Throws DomainError on nonpositive sizes or parameters outside their
// ranges.
CostReport QuantumCostModel(const CostModelInput& input);

}  // namespace zsg

#endif  // ZSG_COST_MODEL_H_
