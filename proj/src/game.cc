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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "zsg/errors.h"

namespace zsg {
namespace {

void CheckEntry(double value, int i, int j) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw DomainError("entry (" + std::to_string(i) + ", " +
                      std::to_string(j) + ") = " + std::to_string(value) +
                      " lies outside [-1, 1]");
  }
}

void CheckShape(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("matrix dimensions must be positive, got " +
                         std::to_string(rows) + " x " + std::to_string(cols));
  }
}

}  // namespace

PayoffMatrix PayoffMatrix::Dense(int rows, int cols,
                                 std::vector<double> row_major) {
  CheckShape(rows, cols);
  if (row_major.size() != static_cast<size_t>(rows) * cols) {
    throw DimensionError("dense matrix expects " +
                         std::to_string(static_cast<size_t>(rows) * cols) +
                         " entries, got " + std::to_string(row_major.size()));
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      CheckEntry(row_major[static_cast<size_t>(i) * cols + j], i, j);
    }
  }
  PayoffMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.storage_ = Storage::kDense;
  m.dense_ = std::move(row_major);
  m.ComputeSparsity();
  return m;
}

PayoffMatrix PayoffMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DimensionError("matrix has no rows");
  const int cols = static_cast<int>(rows.front().size());
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols) {
      throw DimensionError("ragged rows in matrix literal");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Dense(static_cast<int>(rows.size()), cols, std::move(flat));
}

PayoffMatrix PayoffMatrix::Sparse(int rows, int cols,
                                  std::vector<MatrixEntry> entries) {
  CheckShape(rows, cols);
  for (const MatrixEntry& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw IndexError("sparse entry (" + std::to_string(e.row) + ", " +
                       std::to_string(e.col) + ") outside " +
                       std::to_string(rows) + " x " + std::to_string(cols));
    }
    CheckEntry(e.value, e.row, e.col);
  }
  std::erase_if(entries, [](const MatrixEntry& e) { return e.value == 0.0; });
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  for (size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row &&
        entries[k].col == entries[k - 1].col) {
      throw DomainError("duplicate sparse entry (" +
                        std::to_string(entries[k].row) + ", " +
                        std::to_string(entries[k].col) + ")");
    }
  }

  PayoffMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.storage_ = Storage::kSparse;
  m.row_offsets_.assign(rows + 1, 0);
  m.col_offsets_.assign(cols + 1, 0);
  for (const MatrixEntry& e : entries) {
    ++m.row_offsets_[e.row + 1];
    ++m.col_offsets_[e.col + 1];
  }
  std::partial_sum(m.row_offsets_.begin(), m.row_offsets_.end(),
                   m.row_offsets_.begin());
  std::partial_sum(m.col_offsets_.begin(), m.col_offsets_.end(),
                   m.col_offsets_.begin());
  m.row_entries_.resize(entries.size());
  m.col_entries_.resize(entries.size());
  std::vector<int64_t> col_fill(m.col_offsets_.begin(), m.col_offsets_.end() - 1);
  // Row-major order fills each column list in ascending row order.
  for (size_t k = 0; k < entries.size(); ++k) {
    const MatrixEntry& e = entries[k];
    m.row_entries_[k] = {e.col, e.value};
    m.col_entries_[col_fill[e.col]++] = {e.row, e.value};
  }
  m.ComputeSparsity();
  return m;
}

void PayoffMatrix::ComputeSparsity() {
  row_sparsity_ = 0;
  col_sparsity_ = 0;
  if (storage_ == Storage::kSparse) {
    for (int i = 0; i < rows_; ++i) {
      row_sparsity_ = std::max(row_sparsity_, RowNonzeroCount(i));
    }
    for (int j = 0; j < cols_; ++j) {
      col_sparsity_ = std::max(col_sparsity_, ColNonzeroCount(j));
    }
    return;
  }
  std::vector<int> col_counts(cols_, 0);
  for (int i = 0; i < rows_; ++i) {
    int count = 0;
    for (int j = 0; j < cols_; ++j) {
      if (dense_[static_cast<size_t>(i) * cols_ + j] != 0.0) {
        ++count;
        ++col_counts[j];
      }
    }
    row_sparsity_ = std::max(row_sparsity_, count);
  }
  for (int c : col_counts) col_sparsity_ = std::max(col_sparsity_, c);
}

int64_t PayoffMatrix::nonzero_count() const {
  if (storage_ == Storage::kSparse) {
    return static_cast<int64_t>(row_entries_.size());
  }
  return std::count_if(dense_.begin(), dense_.end(),
                       [](double v) { return v != 0.0; });
}

int PayoffMatrix::RowNonzeroCount(int i) const {
  if (storage_ != Storage::kSparse) {
    throw StorageError("matrix has no sparse form");
  }
  if (i < 0 || i >= rows_) throw IndexError("row " + std::to_string(i));
  return static_cast<int>(row_offsets_[i + 1] - row_offsets_[i]);
}

int PayoffMatrix::ColNonzeroCount(int j) const {
  if (storage_ != Storage::kSparse) {
    throw StorageError("matrix has no sparse form");
  }
  if (j < 0 || j >= cols_) throw IndexError("column " + std::to_string(j));
  return static_cast<int>(col_offsets_[j + 1] - col_offsets_[j]);
}

double PayoffMatrix::At(int i, int j) const {
  if (storage_ == Storage::kDense) {
    return dense_[static_cast<size_t>(i) * cols_ + j];
  }
  auto first = row_entries_.begin() + row_offsets_[i];
  auto last = row_entries_.begin() + row_offsets_[i + 1];
  auto it = std::lower_bound(
      first, last, j, [](const Nonzero& nz, int col) { return nz.index < col; });
  return (it != last && it->index == j) ? it->value : 0.0;
}

std::vector<double> PayoffMatrix::Materialize() const {
  if (storage_ == Storage::kDense) return dense_;
  std::vector<double> out(static_cast<size_t>(rows_) * cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    for (int64_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      out[static_cast<size_t>(i) * cols_ + row_entries_[k].index] =
          row_entries_[k].value;
    }
  }
  return out;
}

std::vector<MatrixEntry> PayoffMatrix::NonzeroEntries() const {
  std::vector<MatrixEntry> out;
  if (storage_ == Storage::kSparse) {
    out.reserve(row_entries_.size());
    for (int i = 0; i < rows_; ++i) {
      for (int64_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        out.push_back({i, row_entries_[k].index, row_entries_[k].value});
      }
    }
    return out;
  }
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      const double v = dense_[static_cast<size_t>(i) * cols_ + j];
      if (v != 0.0) out.push_back({i, j, v});
    }
  }
  return out;
}

PayoffMatrix PayoffMatrix::ToSparse() const {
  if (storage_ == Storage::kSparse) return *this;
  return Sparse(rows_, cols_, NonzeroEntries());
}

PayoffMatrix PayoffMatrix::ToDense() const {
  if (storage_ == Storage::kDense) return *this;
  return Dense(rows_, cols_, Materialize());
}

bool PayoffMatrix::IsSkewSymmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (At(i, j) != -At(j, i)) return false;
    }
  }
  return true;
}

QueryLedger::QueryLedger(const QueryLedger& other)
    : dense_entry_(other.dense_entry_queries()),
      sparse_row_(other.sparse_row_queries()),
      sparse_col_(other.sparse_col_queries()) {}

QueryLedger& QueryLedger::operator=(const QueryLedger& other) {
  dense_entry_.store(other.dense_entry_queries());
  sparse_row_.store(other.sparse_row_queries());
  sparse_col_.store(other.sparse_col_queries());
  return *this;
}

QueryLedger& QueryLedger::operator+=(const QueryLedger& other) {
  dense_entry_.fetch_add(other.dense_entry_queries());
  sparse_row_.fetch_add(other.sparse_row_queries());
  sparse_col_.fetch_add(other.sparse_col_queries());
  return *this;
}

bool QueryLedger::operator==(const QueryLedger& other) const {
  return dense_entry_queries() == other.dense_entry_queries() &&
         sparse_row_queries() == other.sparse_row_queries() &&
         sparse_col_queries() == other.sparse_col_queries();
}

double MatrixOracle::Entry(int i, int j) const {
  if (i < 0 || i >= matrix_->rows() || j < 0 || j >= matrix_->cols()) {
    throw IndexError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside " + std::to_string(matrix_->rows()) + " x " +
                     std::to_string(matrix_->cols()));
  }
  ledger_->CountDenseEntry();
  return matrix_->At(i, j);
}

Nonzero MatrixOracle::RowNonzero(int i, int k) const {
  const int count = matrix_->RowNonzeroCount(i);
  if (k < 0 || k >= count) {
    throw RankError("row " + std::to_string(i) + " has " +
                    std::to_string(count) + " nonzeros, asked for rank " +
                    std::to_string(k));
  }
  ledger_->CountSparseRow();
  return matrix_->row_entries_[matrix_->row_offsets_[i] + k];
}

Nonzero MatrixOracle::ColNonzero(int j, int k) const {
  const int count = matrix_->ColNonzeroCount(j);
  if (k < 0 || k >= count) {
    throw RankError("column " + std::to_string(j) + " has " +
                    std::to_string(count) + " nonzeros, asked for rank " +
                    std::to_string(k));
  }
  ledger_->CountSparseCol();
  return matrix_->col_entries_[matrix_->col_offsets_[j] + k];
}

Strategy::Strategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("strategy over zero pure strategies");
  double sum = 0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("strategy has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("strategy sums to " + std::to_string(sum) + ", not 1");
  }
}

Strategy Strategy::FromWeights(std::span<const double> weights) {
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("strategy weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("strategy weights sum to zero");
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& p : probs) p /= total;
  return Strategy(std::move(probs));
}

Strategy Strategy::Uniform(int size) {
  if (size <= 0) throw DomainError("uniform strategy over no elements");
  return Strategy(std::vector<double>(size, 1.0 / size));
}

Strategy Strategy::PointMass(int size, int index) {
  if (index < 0 || index >= size) throw IndexError("point mass index");
  std::vector<double> probs(size, 0.0);
  probs[index] = 1.0;
  return Strategy(std::move(probs));
}

void MatrixProducts(const MatrixOracle& oracle, std::span<const double> x,
                    std::span<const double> y, std::vector<double>& ay,
                    std::vector<double>& atx) {
  const int n = oracle.rows();
  const int m = oracle.cols();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != m) {
    throw DimensionError("strategy sizes (" + std::to_string(x.size()) + ", " +
                         std::to_string(y.size()) + ") do not match " +
                         std::to_string(n) + " x " + std::to_string(m));
  }
  ay.assign(n, 0.0);
  atx.assign(m, 0.0);
  const PayoffMatrix& a = oracle.matrix();
  if (a.has_sparse_form()) {
    for (int i = 0; i < n; ++i) {
      const int count = a.RowNonzeroCount(i);
      for (int k = 0; k < count; ++k) {
        const Nonzero nz = oracle.RowNonzero(i, k);
        ay[i] += nz.value * y[nz.index];
        atx[nz.index] += nz.value * x[i];
      }
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = oracle.Entry(i, j);
      ay[i] += v * y[j];
      atx[j] += v * x[i];
    }
  }
}

GapReport EvaluateDualityGap(const MatrixOracle& oracle, const Strategy& x,
                             const Strategy& y) {
  std::vector<double> ay;
  std::vector<double> atx;
  MatrixProducts(oracle, x.probs(), y.probs(), ay, atx);
  GapReport report;
  // max_element / min_element return the first extremum: lowest index.
  auto row_it = std::max_element(ay.begin(), ay.end());
  auto col_it = std::min_element(atx.begin(), atx.end());
  report.best_row = static_cast<int>(row_it - ay.begin());
  report.best_col = static_cast<int>(col_it - atx.begin());
  report.max_row_payoff = *row_it;
  report.min_col_payoff = *col_it;
  report.gap = report.max_row_payoff - report.min_col_payoff;
  return report;
}

double DualityGap(const MatrixOracle& oracle, const Strategy& x,
                  const Strategy& y) {
  return EvaluateDualityGap(oracle, x, y).gap;
}

double BilinearValue(const MatrixOracle& oracle, const Strategy& x,
                     const Strategy& y) {
  std::vector<double> ay;
  std::vector<double> atx;
  MatrixProducts(oracle, x.probs(), y.probs(), ay, atx);
  double value = 0;
  for (int i = 0; i < x.size(); ++i) value += x[i] * ay[i];
  return value;
}

namespace {

// Solves the square system in place by Gaussian elimination with partial
// pivoting. Returns false when the system is (numerically) singular.
bool SolveLinearSystem(std::vector<std::vector<double>>& a,
                       std::vector<double>& b) {
  const int size = static_cast<int>(b.size());
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int r = col + 1; r < size; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < size; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < size; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = size - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < size; ++c) acc -= a[r][c] * b[c];
    b[r] = acc / a[r][r];
  }
  return true;
}

}  // namespace

double ExactValueSmall(const PayoffMatrix& matrix) {
  const int n = matrix.rows();
  const int m = matrix.cols();
  if (n > 8 || m > 8) {
    throw DomainError("ExactValueSmall handles at most 8 x 8 games");
  }
  const std::vector<double> a = matrix.Materialize();
  // Variables (y_0..y_{m-1}, lambda). Inequalities: rows (A y - lambda <= 0)
  // indexed 0..n-1, then y_j >= 0 indexed n..n+m-1. Each vertex makes m of
  // them tight, together with sum(y) = 1.
  const int num_ineq = n + m;
  const double kTol = 1e-9;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> chosen(m);
  std::vector<bool> mask(num_ineq, false);
  std::fill(mask.begin(), mask.begin() + m, true);
  do {
    int c = 0;
    for (int k = 0; k < num_ineq; ++k) {
      if (mask[k]) chosen[c++] = k;
    }
    std::vector<std::vector<double>> lhs(m + 1, std::vector<double>(m + 1, 0));
    std::vector<double> rhs(m + 1, 0.0);
    for (int r = 0; r < m; ++r) {
      const int k = chosen[r];
      if (k < n) {
        for (int j = 0; j < m; ++j) lhs[r][j] = a[static_cast<size_t>(k) * m + j];
        lhs[r][m] = -1.0;
      } else {
        lhs[r][k - n] = 1.0;
      }
    }
    for (int j = 0; j < m; ++j) lhs[m][j] = 1.0;
    rhs[m] = 1.0;
    if (!SolveLinearSystem(lhs, rhs)) continue;
    bool feasible = true;
    for (int j = 0; j < m && feasible; ++j) feasible = rhs[j] >= -kTol;
    for (int i = 0; i < n && feasible; ++i) {
      double row = 0;
      for (int j = 0; j < m; ++j) row += a[static_cast<size_t>(i) * m + j] * rhs[j];
      feasible = row <= rhs[m] + kTol;
    }
    if (feasible) best = std::min(best, rhs[m]);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace zsg
