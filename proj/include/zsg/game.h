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

#ifndef ZSG_GAME_H_
#define ZSG_GAME_H_

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

namespace zsg {

enum class Storage { kDense, kSparse };

struct MatrixEntry {
  int row;
  int col;
  double value;
};

// One element of a sparse row or column list.
struct Nonzero {
  int index;
  double value;

  bool operator==(const Nonzero&) const = default;
};

// Payoff matrix A in [-1,1]^{n x m}. Alice picks a row, Bob a column, and
// Alice receives A_ij.
//
// Stored either densely (row-major) or sparsely (per-row and per-column
// nonzero lists, each sorted by index). Immutable after construction, so
// one matrix can be shared by concurrent solver runs. Element access goes
// through MatrixOracle, which does the query accounting.
class PayoffMatrix {
 public:
  // Throws DimensionError on a size mismatch and DomainError on any entry
  // outside [-1, 1] (entries are rejected, never clamped).
  static PayoffMatrix Dense(int rows, int cols, std::vector<double> row_major);
  static PayoffMatrix FromRows(const std::vector<std::vector<double>>& rows);
  // Zero values are dropped; duplicate coordinates are an error.
  static PayoffMatrix Sparse(int rows, int cols,
                             std::vector<MatrixEntry> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Storage storage() const { return storage_; }
  bool has_sparse_form() const { return storage_ == Storage::kSparse; }

  // Maximum nonzeros in any row (s) and any column (d).
  int row_sparsity() const { return row_sparsity_; }
  int col_sparsity() const { return col_sparsity_; }
  int64_t nonzero_count() const;

  // Structural metadata of the sparse form; not oracle queries.
  int RowNonzeroCount(int i) const;
  int ColNonzeroCount(int j) const;

  PayoffMatrix ToSparse() const;
  PayoffMatrix ToDense() const;

  // Row-major copy of all n*m entries.
  std::vector<double> Materialize() const;
  // Nonzero entries in row-major order.
  std::vector<MatrixEntry> NonzeroEntries() const;

  bool IsSkewSymmetric() const;

 private:
  friend class MatrixOracle;

  PayoffMatrix() = default;
  double At(int i, int j) const;
  void ComputeSparsity();

  int rows_ = 0;
  int cols_ = 0;
  Storage storage_ = Storage::kDense;
  int row_sparsity_ = 0;
  int col_sparsity_ = 0;
  std::vector<double> dense_;
  // CSR and CSC views of the same nonzeros.
  std::vector<int64_t> row_offsets_;
  std::vector<Nonzero> row_entries_;
  std::vector<int64_t> col_offsets_;
  std::vector<Nonzero> col_entries_;
};

// Per-kind oracle call counters. Increments are atomic so several threads
// reading one matrix through a shared ledger keep a correct joint count.
class QueryLedger {
 public:
  QueryLedger() = default;
  QueryLedger(uint64_t dense, uint64_t rows, uint64_t cols)
      : dense_entry_(dense), sparse_row_(rows), sparse_col_(cols) {}
  QueryLedger(const QueryLedger& other);
  QueryLedger& operator=(const QueryLedger& other);

  void CountDenseEntry() { dense_entry_.fetch_add(1, std::memory_order_relaxed); }
  void CountSparseRow() { sparse_row_.fetch_add(1, std::memory_order_relaxed); }
  void CountSparseCol() { sparse_col_.fetch_add(1, std::memory_order_relaxed); }

  uint64_t dense_entry_queries() const { return dense_entry_.load(); }
  uint64_t sparse_row_queries() const { return sparse_row_.load(); }
  uint64_t sparse_col_queries() const { return sparse_col_.load(); }
  uint64_t total() const {
    return dense_entry_queries() + sparse_row_queries() + sparse_col_queries();
  }

  QueryLedger& operator+=(const QueryLedger& other);
  friend QueryLedger operator+(QueryLedger a, const QueryLedger& b) {
    return a += b;
  }
  bool operator==(const QueryLedger& other) const;

 private:
  std::atomic<uint64_t> dense_entry_{0};
  std::atomic<uint64_t> sparse_row_{0};
  std::atomic<uint64_t> sparse_col_{0};
};

// Query-counted access to a PayoffMatrix. Every successful call increments
// exactly one ledger counter by one; calls that throw are not counted.
class MatrixOracle {
 public:
  MatrixOracle(const PayoffMatrix& matrix, QueryLedger& ledger)
      : matrix_(&matrix), ledger_(&ledger) {}

  // A_ij. Works for both storages (binary search in the sparse row list).
  // Throws IndexError.
  double Entry(int i, int j) const;
  // k-th nonzero of row i in ascending column order. Throws StorageError
  // without a sparse form, IndexError for a bad row, RankError for k past
  // the row's nonzero count.
  Nonzero RowNonzero(int i, int k) const;
  Nonzero ColNonzero(int j, int k) const;

  const PayoffMatrix& matrix() const { return *matrix_; }
  QueryLedger& ledger() const { return *ledger_; }
  int rows() const { return matrix_->rows(); }
  int cols() const { return matrix_->cols(); }

 private:
  const PayoffMatrix* matrix_;
  QueryLedger* ledger_;
};

// Mixed strategy: a probability vector over pure strategies.
class Strategy {
 public:
  // Entries must be >= 0 and sum to 1 within 1e-9 (DomainError otherwise).
  explicit Strategy(std::vector<double> probs);
  // Normalizes nonnegative weights with a positive sum.
  static Strategy FromWeights(std::span<const double> weights);
  static Strategy Uniform(int size);
  static Strategy PointMass(int size, int index);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

struct GapReport {
  double gap = 0;
  // max_i (Ay)_i and its lowest maximizing row.
  double max_row_payoff = 0;
  int best_row = 0;
  // min_j (A^T x)_j and its lowest minimizing column.
  double min_col_payoff = 0;
  int best_col = 0;
};

// max_i (Ay)_i - min_j (A^T x)_j, which bounds both players' suboptimality.
// Costs n*m entry queries on dense storage, or one sparse row query per
// nonzero on sparse storage. Throws DimensionError.
GapReport EvaluateDualityGap(const MatrixOracle& oracle, const Strategy& x,
                             const Strategy& y);
double DualityGap(const MatrixOracle& oracle, const Strategy& x,
                  const Strategy& y);

// Ay (length n) and A^T x (length m) for arbitrary weight vectors, in one
// pass: n*m entry queries on dense storage, nnz row queries on sparse.
void MatrixProducts(const MatrixOracle& oracle, std::span<const double> x,
                    std::span<const double> y, std::vector<double>& ay,
                    std::vector<double>& atx);

// x^T A y, computed exactly with the same query cost as the duality gap.
double BilinearValue(const MatrixOracle& oracle, const Strategy& x,
                     const Strategy& y);

// Exact game value min_y max_i (Ay)_i by enumerating every vertex of
// {(y, lambda) : Ay <= lambda e, y in simplex}. Desk-scale test oracle:
// refuses matrices larger than 8 x 8 with DomainError.
double ExactValueSmall(const PayoffMatrix& matrix);

struct SolveResult {
  Strategy alice;
  Strategy bob;
  double value_estimate = 0;
  double duality_gap = 0;
  int64_t iterations = 0;
  // All queries of the run, and the same total split by purpose.
  QueryLedger ledger;
  QueryLedger score_update_queries;
  QueryLedger sampling_queries;
  QueryLedger evaluation_queries;
};

}  // namespace zsg

#endif  // ZSG_GAME_H_
