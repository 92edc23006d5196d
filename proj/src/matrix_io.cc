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

#include "zsg/matrix_io.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "text_scanner.h"
#include "zsg/errors.h"

namespace zsg {
namespace {

using internal::Token;

constexpr int64_t kMaxDimension = 1 << 30;

int ParseDimension(const Token& token) {
  const int64_t value = internal::ParseNonNegativeInt(token);
  if (value == 0 || value > kMaxDimension) {
    throw ParseError(token.line, token.column,
                     "dimension must be a positive integer");
  }
  return static_cast<int>(value);
}

double ParseEntry(const Token& token) {
  const double value = internal::ParseFiniteDouble(token);
  if (std::abs(value) > 1.0) {
    throw ParseError(token.line, token.column,
                     "entry " + std::string(token.text) +
                         " lies outside [-1, 1]");
  }
  return value;
}

}  // namespace

PayoffMatrix ParseMatrix(std::string_view text) {
  internal::TextScanner scanner(text);
  std::vector<Token> tokens;
  if (!scanner.NextLine(&tokens)) {
    throw ParseError(1, 1, "empty matrix file");
  }
  if (tokens.size() != 2 && tokens.size() != 3) {
    throw ParseError(tokens.front().line, tokens.front().column,
                     "header must be 'n m' (dense) or 'n m nnz' (sparse)");
  }
  const int n = ParseDimension(tokens[0]);
  const int m = ParseDimension(tokens[1]);
  const bool sparse = tokens.size() == 3;

  const auto expect_end = [&] {
    if (scanner.NextLine(&tokens)) {
      throw ParseError(tokens.front().line, tokens.front().column,
                       "unexpected trailing content");
    }
  };
  if (!sparse) {
    std::vector<double> values;
    values.reserve(static_cast<size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
      if (!scanner.NextLine(&tokens)) {
        throw ParseError(scanner.line(), 1,
                         "expected " + std::to_string(n) + " rows, found " +
                             std::to_string(i));
      }
      internal::ExpectTokenCount(tokens, m, "row " + std::to_string(i));
      for (const Token& token : tokens) values.push_back(ParseEntry(token));
    }
    expect_end();
    return PayoffMatrix::Dense(n, m, std::move(values));
  }

  const int64_t nnz = internal::ParseNonNegativeInt(tokens[2]);
  if (nnz > static_cast<int64_t>(n) * m) {
    throw ParseError(tokens[2].line, tokens[2].column,
                     "nnz exceeds n * m");
  }
  std::vector<MatrixEntry> entries;
  entries.reserve(nnz);
  std::set<std::pair<int, int>> seen;
  for (int64_t k = 0; k < nnz; ++k) {
    if (!scanner.NextLine(&tokens)) {
      throw ParseError(scanner.line(), 1,
                       "expected " + std::to_string(nnz) +
                           " entries, found " + std::to_string(k));
    }
    internal::ExpectTokenCount(tokens, 3, "sparse entry");
    const int64_t i = internal::ParseNonNegativeInt(tokens[0]);
    const int64_t j = internal::ParseNonNegativeInt(tokens[1]);
    if (i >= n) {
      throw ParseError(tokens[0].line, tokens[0].column,
                       "row index out of range");
    }
    if (j >= m) {
      throw ParseError(tokens[1].line, tokens[1].column,
                       "column index out of range");
    }
    const double value = ParseEntry(tokens[2]);
    if (!seen.emplace(i, j).second) {
      throw ParseError(tokens[0].line, tokens[0].column,
                       "duplicate entry (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
    }
    entries.push_back({static_cast<int>(i), static_cast<int>(j), value});
  }
  expect_end();
  return PayoffMatrix::Sparse(n, m, std::move(entries));
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PayoffMatrix ReadMatrixFile(const std::string& path) {
  return ParseMatrix(ReadTextFile(path));
}

std::string SerializeMatrix(const PayoffMatrix& matrix) {
  std::string out;
  if (matrix.storage() == Storage::kDense) {
    out = std::to_string(matrix.rows()) + " " + std::to_string(matrix.cols()) +
          "\n";
    const std::vector<double> values = matrix.Materialize();
    for (int i = 0; i < matrix.rows(); ++i) {
      for (int j = 0; j < matrix.cols(); ++j) {
        if (j > 0) out += ' ';
        out += internal::FormatDouble(
            values[static_cast<size_t>(i) * matrix.cols() + j]);
      }
      out += '\n';
    }
    return out;
  }
  const std::vector<MatrixEntry> entries = matrix.NonzeroEntries();
  out = std::to_string(matrix.rows()) + " " + std::to_string(matrix.cols()) +
        " " + std::to_string(entries.size()) + "\n";
  for (const MatrixEntry& e : entries) {
    out += std::to_string(e.row) + " " + std::to_string(e.col) + " " +
           internal::FormatDouble(e.value) + "\n";
  }
  return out;
}

}  // namespace zsg
