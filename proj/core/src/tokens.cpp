// tokens.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Copyright 2026 The stutterlab authors

#include "stutterlab/tokens.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace stutterlab {

Token NormalizeToken(const Token& token) {
  const bool partial =
      token.size() >= 2 && token.back() == '-' &&
      std::isalnum(static_cast<unsigned char>(token[token.size() - 2]));
  Token out;
  out.reserve(token.size());
  for (char c : token) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || c == '\'') {
      out.push_back(static_cast<char>(std::tolower(uc)));
    }
  }
  if (partial) out.push_back('-');
  return out;
}

TokenSeq NormalizeTokens(const TokenSeq& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    Token norm = NormalizeToken(t);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  return out;
}

bool IsPartialToken(const Token& token) {
  return token.size() >= 2 && token.back() == '-';
}

Token PartialOf(const Token& word) {
  const std::size_t len = word.size();
  const std::size_t keep = std::max<std::size_t>(
      1, std::min<std::size_t>(3, len > 0 ? len - 1 : 1));
  return word.substr(0, keep) + "-";
}

TokenSeq SplitWhitespace(const std::string& text) {
  TokenSeq out;
  std::istringstream in(text);
  Token token;
  while (in >> token) out.push_back(token);
  return out;
}

std::string JoinTokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace stutterlab
