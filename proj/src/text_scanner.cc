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

#include "text_scanner.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "zsg/errors.h"

namespace zsg::internal {

bool TextScanner::NextLine(std::vector<Token>* tokens) {
  tokens->clear();
  while (pos_ < text_.size()) {
    size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    const size_t start = pos_;
    pos_ = end + 1;
    ++line_;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
        ++i;
      }
      if (i == line.size()) break;
      size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r') {
        ++j;
      }
      tokens->push_back(Token{text_.substr(start + i, j - i), line_,
                              static_cast<int>(i) + 1});
      i = j;
    }
    if (!tokens->empty()) return true;
  }
  return false;
}

double ParseFiniteDouble(const Token& token) {
  std::string_view s = token.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(token.line, token.column,
                     "expected a finite number, got '" +
                         std::string(token.text) + "'");
  }
  return value;
}

int64_t ParseNonNegativeInt(const Token& token) {
  int64_t value = 0;
  const std::string_view s = token.text;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) {
    throw ParseError(token.line, token.column,
                     "expected a non-negative integer, got '" +
                         std::string(token.text) + "'");
  }
  return value;
}

void ExpectTokenCount(const std::vector<Token>& tokens, size_t count,
                      std::string_view what) {
  if (tokens.size() < count) {
    const Token& last = tokens.back();
    throw ParseError(last.line,
                     last.column + static_cast<int>(last.text.size()),
                     std::string(what) + ": expected " +
                         std::to_string(count) + " values, found " +
                         std::to_string(tokens.size()));
  }
  if (tokens.size() > count) {
    throw ParseError(tokens[count].line, tokens[count].column,
                     std::string(what) + ": expected " +
                         std::to_string(count) + " values, found " +
                         std::to_string(tokens.size()));
  }
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace zsg::internal
