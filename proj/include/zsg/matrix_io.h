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

#ifndef ZSG_MATRIX_IO_H_
#define ZSG_MATRIX_IO_H_

#include <string>
#include <string_view>

#include "zsg/game.h"

namespace zsg {

// Dense text:   "n m" followed by n lines of m numbers.
// Sparse text:  "n m nnz" followed by nnz lines "i j value" (0-based).
// The header's token count selects the format. '#' starts a comment.
// Entries must lie in [-1, 1]; sparse entries must be unique.
// Malformed input throws ParseError carrying the line and column.
PayoffMatrix ParseMatrix(std::string_view text);

// Reads and parses a file. An unreadable path throws ParseError at line 0.
PayoffMatrix ReadMatrixFile(const std::string& path);

// Writes the matrix in the format matching its storage. Values use 17
// significant digits, so ParseMatrix(SerializeMatrix(a)) reproduces `a`.
std::string SerializeMatrix(const PayoffMatrix& matrix);

// Whole-file read helper shared by the file front ends.
std::string ReadTextFile(const std::string& path);

}  // namespace zsg

#endif  // ZSG_MATRIX_IO_H_
