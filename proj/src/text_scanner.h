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

// Line/column-aware tokenizer for the plain-text input formats. Internal.

#ifndef ZSG_SRC_TEXT_SCANNER_H_
#define ZSG_SRC_TEXT_SCANNER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zsg::internal {

struct Token {
  std::string_view text;
  int line;    // 1-based
  int column;  // 1-based
};

// Splits text into whitespace-separated tokens, one logical line at a time.
// Blank lines and '#' comments are skipped.
class TextScanner {
 public:
  explicit TextScanner(std::string_view text) : text_(text) {}

  // Fills `tokens` with the next non-empty line. Returns false at the end.
  bool NextLine(std::vector<Token>* tokens);

  // Line number one past the last consumed line; used for end-of-input
  // errors.
  int line() const { return line_ + 1; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 0;
};

// Strict numeric parsing. Throws ParseError at the token on failure.
double ParseFiniteDouble(const Token& token);
int64_t ParseNonNegativeInt(const Token& token);

// Requires exactly `count` tokens on the line.
void ExpectTokenCount(const std::vector<Token>& tokens, size_t count,
                      std::string_view what);

// %.17g: enough digits to round-trip every double.
std::string FormatDouble(double value);

}  // namespace zsg::internal

#endif  // ZSG_SRC_TEXT_SCANNER_H_
