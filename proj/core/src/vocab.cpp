// vocab.cpp
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

#include "stutterlab/vocab.hpp"

#include <set>
#include <stdexcept>

namespace stutterlab {

Vocabulary::Vocabulary() {
  symbols_ = {kBos, kEos, kUnk, kEps};
  for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
    index_.emplace(symbols_[i], i);
  }
}

Vocabulary Vocabulary::Build(const std::vector<TokenSeq>& transcripts) {
  std::set<std::string> words;
  for (const auto& seq : transcripts) {
    for (const auto& token : seq) {
      if (token.empty()) throw std::invalid_argument("empty training token");
      if (token == kBos || token == kEos || token == kUnk || token == kEps) {
        throw std::invalid_argument("reserved symbol in training text: " +
                                    token);
      }
      words.insert(token);
    }
  }
  Vocabulary vocab;
  for (const auto& word : words) {
    vocab.index_.emplace(word, static_cast<int>(vocab.symbols_.size()));
    vocab.symbols_.push_back(word);
  }
  return vocab;
}

Vocabulary Vocabulary::FromSymbols(const std::vector<std::string>& symbols) {
  if (symbols.size() < 4 || symbols[0] != kBos || symbols[1] != kEos ||
      symbols[2] != kUnk || symbols[3] != kEps) {
    throw std::invalid_argument("symbol list lacks the reserved prefix");
  }
  Vocabulary vocab;
  for (std::size_t i = 4; i < symbols.size(); ++i) {
    if (!vocab.index_.emplace(symbols[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate symbol: " + symbols[i]);
    }
    vocab.symbols_.push_back(symbols[i]);
  }
  return vocab;
}

int Vocabulary::Id(const Token& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::Symbol(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("symbol id");
  return symbols_[static_cast<std::size_t>(id)];
}

bool Vocabulary::Contains(const Token& token) const {
  return index_.count(token) > 0;
}

}  // namespace stutterlab
