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

#ifndef ZSG_ERRORS_H_
#define ZSG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace zsg {

// Index outside the valid range of a matrix, vector or tree.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A sparse-oracle rank query past the last nonzero of a row or column.
class RankError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An argument violates a documented precondition (value range, sign, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation needs the sparse (row/column list) form of the matrix.
class StorageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sampling from a distribution with total mass zero.
class EmptyDistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagnostic failure inside a solver or sampler: round cap reached, an
// acceptance probability above one, an uncertified extraction, ...
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace zsg

#endif  // ZSG_ERRORS_H_
