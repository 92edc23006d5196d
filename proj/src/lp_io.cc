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

#include "zsg/lp_io.h"

#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "text_scanner.h"
#include "zsg/errors.h"
#include "zsg/matrix_io.h"

namespace zsg {
namespace {

using internal::Token;

[[noreturn]] void Fail(const Token& token, const std::string& message) {
  throw ParseError(token.line, token.column, message);
}

int ParseSize(const Token& token) {
  const int64_t value = internal::ParseNonNegativeInt(token);
  if (value == 0 || value > (1 << 30)) Fail(token, "size must be positive");
  return static_cast<int>(value);
}

double ParseBounded(const Token& token, double bound, const std::string& what) {
  const double value = internal::ParseFiniteDouble(token);
  if (std::abs(value) > bound) {
    Fail(token, what + " = " + std::string(token.text) +
                    " violates |" + what + "| <= " +
                    internal::FormatDouble(bound));
  }
  return value;
}

}  // namespace

StandardLp ParseLp(std::string_view text) {
  internal::TextScanner scanner(text);
  std::vector<Token> tokens;
  std::optional<int> n, m;
  std::optional<double> big_r, small_r;
  std::optional<std::vector<Token>> b_tokens, c_tokens;
  std::optional<PayoffMatrix> a;

  const auto need_sizes = [&](const Token& at) {
    if (!n || !m) Fail(at, "'n' and 'm' must precede '" +
                               std::string(at.text) + "'");
  };
  const auto once = [](bool present, const Token& at) {
    if (present) Fail(at, "duplicate field '" + std::string(at.text) + "'");
  };

  while (scanner.NextLine(&tokens)) {
    const Token key = tokens.front();
    if (key.text == "n" || key.text == "m") {
      once(key.text == "n" ? n.has_value() : m.has_value(), key);
      internal::ExpectTokenCount(tokens, 2, std::string(key.text));
      (key.text == "n" ? n : m) = ParseSize(tokens[1]);
    } else if (key.text == "R" || key.text == "r") {
      std::optional<double>& slot = key.text == "R" ? big_r : small_r;
      once(slot.has_value(), key);
      internal::ExpectTokenCount(tokens, 2, std::string(key.text));
      const double value = internal::ParseFiniteDouble(tokens[1]);
      if (!(value > 0.0)) Fail(tokens[1], std::string(key.text) +
                                              " must be positive");
      slot = value;
    } else if (key.text == "b" || key.text == "c") {
      need_sizes(key);
      std::optional<std::vector<Token>>& slot =
          key.text == "b" ? b_tokens : c_tokens;
      once(slot.has_value(), key);
      internal::ExpectTokenCount(tokens, (key.text == "b" ? *m : *n) + 1,
                                 std::string(key.text));
      slot.emplace(tokens.begin() + 1, tokens.end());
    } else if (key.text == "A") {
      need_sizes(key);
      once(a.has_value(), key);
      if (tokens.size() < 2) Fail(key, "expected 'A dense' or 'A sparse K'");
      if (tokens[1].text == "dense") {
        internal::ExpectTokenCount(tokens, 2, "A dense");
        std::vector<double> values;
        for (int i = 0; i < *n; ++i) {
          if (!scanner.NextLine(&tokens)) {
            throw ParseError(scanner.line(), 1,
                             "A: expected " + std::to_string(*n) + " rows");
          }
          internal::ExpectTokenCount(tokens, *m,
                                     "A row " + std::to_string(i));
          for (const Token& t : tokens) {
            values.push_back(ParseBounded(t, 1.0, "A_ij"));
          }
        }
        a = PayoffMatrix::Dense(*n, *m, std::move(values));
      } else if (tokens[1].text == "sparse") {
        internal::ExpectTokenCount(tokens, 3, "A sparse");
        const int64_t count = internal::ParseNonNegativeInt(tokens[2]);
        if (count > static_cast<int64_t>(*n) * *m) {
          Fail(tokens[2], "entry count exceeds n * m");
        }
        std::set<std::pair<int64_t, int64_t>> seen;
        std::vector<MatrixEntry> entries;
        for (int64_t k = 0; k < count; ++k) {
          if (!scanner.NextLine(&tokens)) {
            throw ParseError(scanner.line(), 1,
                             "A: expected " + std::to_string(count) +
                                 " entries");
          }
          internal::ExpectTokenCount(tokens, 3, "A entry");
          const int64_t i = internal::ParseNonNegativeInt(tokens[0]);
          const int64_t j = internal::ParseNonNegativeInt(tokens[1]);
          if (i >= *n) Fail(tokens[0], "row index out of range");
          if (j >= *m) Fail(tokens[1], "column index out of range");
          if (!seen.emplace(i, j).second) Fail(tokens[0], "duplicate entry");
          entries.push_back({static_cast<int>(i), static_cast<int>(j),
                             ParseBounded(tokens[2], 1.0, "A_ij")});
        }
        a = PayoffMatrix::Sparse(*n, *m, std::move(entries));
      } else {
        Fail(tokens[1], "expected 'dense' or 'sparse'");
      }
    } else {
      Fail(key, "unknown field '" + std::string(key.text) + "'");
    }
  }

  const int end_line = scanner.line();
  const auto missing = [&](const char* field) {
    throw ParseError(end_line, 1,
                     std::string("missing required field '") + field + "'");
  };
  if (!n) missing("n");
  if (!m) missing("m");
  if (!big_r) missing("R");
  if (!small_r) missing("r");
  if (!b_tokens) missing("b");
  if (!c_tokens) missing("c");
  if (!a) missing("A");

  std::vector<double> b, c;
  for (const Token& t : *b_tokens) b.push_back(ParseBounded(t, 1.0, "b_j"));
  for (const Token& t : *c_tokens) c.push_back(ParseBounded(t, *big_r, "c_i"));
  return StandardLp(std::move(*a), std::move(b), std::move(c), *big_r,
                    *small_r);
}

StandardLp ReadLpFile(const std::string& path) {
  return ParseLp(ReadTextFile(path));
}

std::string SerializeLp(const StandardLp& lp) {
  std::string out;
  out += "n " + std::to_string(lp.constraints()) + "\n";
  out += "m " + std::to_string(lp.variables()) + "\n";
  out += "R " + internal::FormatDouble(lp.primal_bound()) + "\n";
  out += "r " + internal::FormatDouble(lp.dual_bound()) + "\n";
  out += "b";
  for (double v : lp.b()) out += " " + internal::FormatDouble(v);
  out += "\nc";
  for (double v : lp.c()) out += " " + internal::FormatDouble(v);
  out += "\n";
  const std::string matrix = SerializeMatrix(lp.a());
  // Drop the matrix header line; the LP format carries its own.
  const std::string body = matrix.substr(matrix.find('\n') + 1);
  if (lp.a().storage() == Storage::kDense) {
    out += "A dense\n" + body;
  } else {
    out += "A sparse " + std::to_string(lp.a().NonzeroEntries().size()) +
           "\n" + body;
  }
  return out;
}

}  // namespace zsg
