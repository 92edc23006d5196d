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

#ifndef ZSG_LP_IO_H_
#define ZSG_LP_IO_H_

#include <string>
#include <string_view>

#include "zsg/lp.h"

namespace zsg {

// Keyword text format, one field per line, '#' comments allowed:
//
//   n 2          # constraints
//   m 2          # variables
//   R 1
//   r 2
//   b 1 1        # m objective coefficients
//   c 0.3 0.4    # n right-hand sides
//   A dense      # then n lines of m entries
//   1 0
//   0 1
//
// The A block may instead be "A sparse K" followed by K lines "i j value".
// Scalar fields may appear in any order, but n and m must precede b, c and
// A. Every field is required exactly once. Violations of the normalization
// (|A_ij| > 1, |b_j| > 1, |c_i| > R, non-positive R or r) throw ParseError
// at the offending token.
StandardLp ParseLp(std::string_view text);
StandardLp ReadLpFile(const std::string& path);

// Canonical form of the format above; A follows the matrix storage.
std::string SerializeLp(const StandardLp& lp);

}  // namespace zsg

#endif  // ZSG_LP_IO_H_
