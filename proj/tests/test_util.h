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

// Independent reference computations and instance generators for tests.
// Nothing here calls into the library's numerical kernels, so agreement
// with the library is evidence rather than tautology.

#ifndef ZSG_TESTS_TEST_UTIL_H_
#define ZSG_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "zsg/game.h"
#include "zsg/rng.h"

namespace zsg::testing {

using DenseRows = std::vector<std::vector<double>>;

// Entries uniform in [-1, 1].
DenseRows RandomRows(int n, int m, Rng& rng);
PayoffMatrix RandomDense(int n, int m, Rng& rng);
// Every row has exactly `s` nonzeros at distinct random columns, each
// nonzero uniform in [-1, 1] away from zero.
PayoffMatrix RandomSparse(int n, int m, int s, Rng& rng);

DenseRows ToRows(const PayoffMatrix& matrix);

// A x and A^T x by plain loops in long double.
std::vector<long double> ReferenceAy(const DenseRows& a,
                                     const std::vector<double>& y);
std::vector<long double> ReferenceAtx(const DenseRows& a,
                                      const std::vector<double>& x);

// exp(s_j) / sum_k exp(s_k) evaluated directly in long double.
std::vector<double> ReferenceGibbs(const std::vector<long double>& scores);

// Potential (sum_j e^{u_j}) (sum_i e^{v_i}) with u = -A^T x, v = A y.
long double ReferencePotential(const DenseRows& a,
                               const std::vector<double>& x,
                               const std::vector<double>& y);

// Pearson chi-squared goodness-of-fit p-value. Categories with expected
// count below 5 are pooled into one bin.
double ChiSquaredPValue(const std::vector<int64_t>& counts,
                        const std::vector<double>& probabilities);

struct LpOptimum {
  double value;
  std::vector<double> y;  // an optimal primal vertex
};

// max b^T y s.t. A y <= c, y >= 0 by enumerating every basic solution.
// Returns nullopt when infeasible or unbounded (no vertex attains a finite
// maximum under an added sum(y) <= 1e6 cap). Desk scale only.
std::optional<LpOptimum> BruteForceLp(const DenseRows& a,
                                      const std::vector<double>& b,
                                      const std::vector<double>& c);

// Value of the matrix game via the same enumeration idea applied to
// min lambda s.t. A y <= lambda e, y in the simplex, written as an LP.
double BruteForceGameValue(const DenseRows& a);

}  // namespace zsg::testing

#endif  // ZSG_TESTS_TEST_UTIL_H_
