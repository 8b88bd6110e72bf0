// tokens.hpp
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

#ifndef STUTTERLAB_TOKENS_HPP_
#define STUTTERLAB_TOKENS_HPP_

#include <string>
#include <vector>

namespace stutterlab {

using Token = std::string;
using TokenSeq = std::vector<Token>;

// Lowercases and strips punctuation. A single trailing '-' survives: it
// marks a partial word ("add-"), which must stay distinct from the full
// word it abbreviates.
Token NormalizeToken(const Token& token);

TokenSeq NormalizeTokens(const TokenSeq& tokens);

// True if `token` is a partial-word fragment ("per-").
bool IsPartialToken(const Token& token);

// Partial-word fragment for `word`: the first min(3, len-1) characters
// followed by '-', at least one character. PartialOf("address") == "add-".
Token PartialOf(const Token& word);

TokenSeq SplitWhitespace(const std::string& text);
std::string JoinTokens(const TokenSeq& tokens);

}  // namespace stutterlab

#endif  // STUTTERLAB_TOKENS_HPP_
