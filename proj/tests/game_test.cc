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

#include "zsg/game.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "zsg/errors.h"
#include "zsg/rng.h"

namespace zsg {
namespace {

PayoffMatrix MatchingPennies() {
  return PayoffMatrix::FromRows({{1, -1}, {-1, 1}});
}

TEST(PayoffMatrixTest, RejectsEntriesOutsideUnitInterval) {
  EXPECT_THROW(PayoffMatrix::FromRows({{1.5}}), DomainError);
  EXPECT_THROW(PayoffMatrix::Dense(1, 2, {0.0, -1.0000001}), DomainError);
  EXPECT_THROW(PayoffMatrix::Sparse(2, 2, {{0, 0, 2.0}}), DomainError);
  EXPECT_THROW(PayoffMatrix::FromRows({{NAN}}), DomainError);
}

TEST(PayoffMatrixTest, RejectsShapeMismatch) {
  EXPECT_THROW(PayoffMatrix::Dense(2, 2, {1, 0, 0}), DimensionError);
  EXPECT_THROW(PayoffMatrix::FromRows({{1, 0}, {0}}), DimensionError);
}

TEST(PayoffMatrixTest, SparseDropsZerosAndRejectsDuplicates) {
  const PayoffMatrix a =
      PayoffMatrix::Sparse(2, 3, {{0, 1, 0.5}, {1, 2, 0.0}, {1, 0, -1}});
  EXPECT_EQ(a.nonzero_count(), 2);
  EXPECT_EQ(a.RowNonzeroCount(1), 1);
  EXPECT_THROW(PayoffMatrix::Sparse(2, 2, {{0, 0, 0.5}, {0, 0, 0.25}}),
               DomainError);
  EXPECT_THROW(PayoffMatrix::Sparse(2, 2, {{2, 0, 0.5}}), IndexError);
}

TEST(PayoffMatrixTest, SparsityCounts) {
  const PayoffMatrix a = PayoffMatrix::FromRows(
      {{0, 0.5, 0, -1}, {0.25, 0, 0, 0}, {0.1, 0.2, 0.3, 0}}).ToSparse();
  EXPECT_EQ(a.row_sparsity(), 3);
  EXPECT_EQ(a.col_sparsity(), 2);
  EXPECT_EQ(a.ColNonzeroCount(2), 1);
  EXPECT_THROW(PayoffMatrix::FromRows({{1}}).RowNonzeroCount(0),
               StorageError);
}

TEST(PayoffMatrixTest, DenseSparseConversionsPreserveEntries) {
  Rng rng(3);
  const PayoffMatrix sparse = testing::RandomSparse(6, 9, 3, rng);
  EXPECT_EQ(sparse.Materialize(), sparse.ToDense().Materialize());
  EXPECT_EQ(sparse.Materialize(),
            sparse.ToDense().ToSparse().Materialize());
  EXPECT_EQ(sparse.NonzeroEntries().size(), 18u);
}

TEST(PayoffMatrixTest, SkewSymmetry) {
  EXPECT_TRUE(PayoffMatrix::FromRows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}})
                  .IsSkewSymmetric());
  EXPECT_FALSE(MatchingPennies().IsSkewSymmetric());
}

TEST(MatrixOracleTest, EntryCountsOneDenseQueryPerCall) {
  const PayoffMatrix a = MatchingPennies();
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_EQ(oracle.Entry(0, 0), 1.0);
  EXPECT_EQ(ledger.dense_entry_queries(), 1u);
  oracle.Entry(0, 0);
  oracle.Entry(0, 0);
  EXPECT_EQ(ledger.dense_entry_queries(), 3u);
  EXPECT_EQ(ledger.total(), 3u);
}

TEST(MatrixOracleTest, OutOfRangeEntryIsNotCounted) {
  const PayoffMatrix a = MatchingPennies();
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_THROW(oracle.Entry(2, 0), IndexError);
  EXPECT_THROW(oracle.Entry(0, -1), IndexError);
  EXPECT_EQ(ledger.total(), 0u);
}

TEST(MatrixOracleTest, RankedNonzeroAccess) {
  const PayoffMatrix a =
      PayoffMatrix::FromRows({{0, 0.5, 0, -1}, {0, 0, 0.25, 0}}).ToSparse();
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_EQ(oracle.RowNonzero(0, 0), (Nonzero{1, 0.5}));
  EXPECT_EQ(oracle.RowNonzero(0, 1), (Nonzero{3, -1}));
  EXPECT_THROW(oracle.RowNonzero(0, 2), RankError);
  EXPECT_EQ(oracle.ColNonzero(2, 0), (Nonzero{1, 0.25}));
  EXPECT_THROW(oracle.ColNonzero(0, 0), RankError);
  EXPECT_EQ(ledger.sparse_row_queries(), 2u);
  EXPECT_EQ(ledger.sparse_col_queries(), 1u);
}

TEST(MatrixOracleTest, SparseQueriesNeedSparseForm) {
  const PayoffMatrix a = MatchingPennies();
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_THROW(oracle.RowNonzero(0, 0), StorageError);
}

TEST(QueryLedgerTest, Arithmetic) {
  QueryLedger a(1, 2, 3);
  const QueryLedger b(10, 20, 30);
  a += b;
  EXPECT_EQ(a, QueryLedger(11, 22, 33));
  EXPECT_EQ((a + b).total(), 126u);
  const QueryLedger copy = a;
  EXPECT_EQ(copy, a);
}

TEST(StrategyTest, Validation) {
  EXPECT_THROW(Strategy({0.5, 0.6}), DomainError);
  EXPECT_THROW(Strategy({1.5, -0.5}), DomainError);
  EXPECT_NO_THROW(Strategy({0.25, 0.75}));
  const std::vector<double> weights = {1, 3};
  EXPECT_DOUBLE_EQ(Strategy::FromWeights(weights)[1], 0.75);
  EXPECT_EQ(Strategy::PointMass(3, 2)[2], 1.0);
  EXPECT_DOUBLE_EQ(Strategy::Uniform(4)[3], 0.25);
  EXPECT_THROW(Strategy::PointMass(3, 3), IndexError);
}

TEST(DualityGapTest, MatchingPenniesExamples) {
  const PayoffMatrix a = MatchingPennies();
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_DOUBLE_EQ(
      DualityGap(oracle, Strategy::Uniform(2), Strategy::Uniform(2)), 0.0);
  EXPECT_DOUBLE_EQ(DualityGap(oracle, Strategy::PointMass(2, 0),
                              Strategy::PointMass(2, 0)),
                   2.0);
}

TEST(DualityGapTest, TiesBreakToLowestIndex) {
  const PayoffMatrix a = PayoffMatrix::FromRows({{0, 0, 0}, {0, 0, 0}});
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  const GapReport report =
      EvaluateDualityGap(oracle, Strategy::Uniform(2), Strategy::Uniform(3));
  EXPECT_EQ(report.best_row, 0);
  EXPECT_EQ(report.best_col, 0);
}

TEST(DualityGapTest, DenseCostsNmAndSparseCostsNnz) {
  Rng rng(5);
  const PayoffMatrix sparse = testing::RandomSparse(6, 8, 2, rng);
  const PayoffMatrix dense = sparse.ToDense();
  QueryLedger dense_ledger;
  QueryLedger sparse_ledger;
  const Strategy x = Strategy::Uniform(6);
  const Strategy y = Strategy::Uniform(8);
  const double g1 = DualityGap(MatrixOracle(dense, dense_ledger), x, y);
  const double g2 = DualityGap(MatrixOracle(sparse, sparse_ledger), x, y);
  EXPECT_NEAR(g1, g2, 1e-15);
  EXPECT_EQ(dense_ledger.dense_entry_queries(), 48u);
  EXPECT_EQ(sparse_ledger.sparse_row_queries(), 12u);
}

TEST(DualityGapTest, NonNegativeAndMatchesReference) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + rng.UniformIndex(6);
    const int m = 1 + rng.UniformIndex(6);
    const testing::DenseRows rows = testing::RandomRows(n, m, rng);
    const PayoffMatrix a = PayoffMatrix::FromRows(rows);
    std::vector<double> xw(n), yw(m);
    for (double& v : xw) v = rng.Uniform() + 1e-3;
    for (double& v : yw) v = rng.Uniform() + 1e-3;
    const Strategy x = Strategy::FromWeights(xw);
    const Strategy y = Strategy::FromWeights(yw);
    QueryLedger ledger;
    const double gap = DualityGap(MatrixOracle(a, ledger), x, y);
    const std::vector<double> xp(x.probs().begin(), x.probs().end());
    const std::vector<double> yp(y.probs().begin(), y.probs().end());
    const auto ay = testing::ReferenceAy(rows, yp);
    const auto atx = testing::ReferenceAtx(rows, xp);
    const long double expected = *std::max_element(ay.begin(), ay.end()) -
                                 *std::min_element(atx.begin(), atx.end());
    EXPECT_GE(gap, 0.0);
    EXPECT_NEAR(gap, static_cast<double>(expected), 1e-12);
  }
}

TEST(BilinearValueTest, PointMassesGiveTheEntry) {
  const PayoffMatrix a = PayoffMatrix::FromRows({{0.1, 0.2}, {0.3, -0.4}});
  QueryLedger ledger;
  const MatrixOracle oracle(a, ledger);
  EXPECT_DOUBLE_EQ(BilinearValue(oracle, Strategy::PointMass(2, 1),
                                 Strategy::PointMass(2, 1)),
                   -0.4);
}

TEST(ExactValueSmallTest, KnownGames) {
  EXPECT_NEAR(ExactValueSmall(MatchingPennies()), 0.0, 1e-12);
  EXPECT_NEAR(ExactValueSmall(PayoffMatrix::FromRows(
                  {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}})),
              0.0, 1e-12);
  EXPECT_NEAR(ExactValueSmall(PayoffMatrix::FromRows({{1}})), 1.0, 1e-12);
}

TEST(ExactValueSmallTest, TwoByTwoClosedForm) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = 2 * rng.Uniform() - 1, b = 2 * rng.Uniform() - 1;
    const double c = 2 * rng.Uniform() - 1, d = 2 * rng.Uniform() - 1;
    // Row player maximizes [[a, b], [c, d]]. Pure saddle point if the
    // maximin over rows equals the minimax over columns, otherwise the
    // mixed formula.
    const double maximin = std::max(std::min(a, b), std::min(c, d));
    const double minimax = std::min(std::max(a, c), std::max(b, d));
    const double expected = maximin == minimax
                                ? maximin
                                : (a * d - b * c) / (a + d - b - c);
    EXPECT_NEAR(ExactValueSmall(PayoffMatrix::FromRows({{a, b}, {c, d}})),
                expected, 1e-9);
  }
}

TEST(ExactValueSmallTest, AgreesWithBruteForceLp) {
  Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + rng.UniformIndex(4);
    const int m = 1 + rng.UniformIndex(4);
    const testing::DenseRows rows = testing::RandomRows(n, m, rng);
    EXPECT_NEAR(ExactValueSmall(PayoffMatrix::FromRows(rows)),
                testing::BruteForceGameValue(rows), 1e-9);
  }
}

TEST(ExactValueSmallTest, RefusesLargeGames) {
  Rng rng(1);
  EXPECT_THROW(ExactValueSmall(testing::RandomDense(9, 2, rng)), DomainError);
}

}  // namespace
}  // namespace zsg
